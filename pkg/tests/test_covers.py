import random
from fractions import Fraction

import pytest

from meroflat.covers import (
    INF,
    PlaneCover,
    PuiseuxBranch,
    branch_value,
    components,
    default_target,
    discriminant,
    fiber_partition,
    generic_fiber_partition,
    irregular_values,
    is_logarithmic,
    kappa_shift,
    newton_puiseux,
    pole_order,
    residual,
    resultant_with_derivative,
    section_roundtrip,
)
from meroflat.errors import DomainError, ResourceError
from meroflat.expr import parse
from meroflat.fixtures import CoverSuiteConfig, cover_suite
from meroflat.partitions import Partition, partition_leq


def z(text):
    return parse(text)


def cover(*coeffs):
    return PlaneCover(tuple(z(c) for c in coeffs))


def series_set(branches):
    return {(b.series, b.ramification, b.multiplicity) for b in branches}


class TestNewtonPuiseux:
    def test_unramified_pair(self):
        bs = newton_puiseux(cover("0", "-z^-4"))
        assert series_set(bs) == {(z("z^-2"), 1, 1), (z("-z^-2"), 1, 1)}
        assert all(b.guaranteed_valuation == INF for b in bs)

    def test_ramified_branch(self):
        (b,) = newton_puiseux(cover("0", "-z^-3"))
        assert (b.series, b.ramification, b.multiplicity) == (z("z^(-3/2)"), 2, 2)

    def test_two_term_branches(self):
        P = cover("-2*z^-2", "z^-4 - z^-5")
        (b,) = newton_puiseux(P)
        assert b.ramification == 2 and b.multiplicity == 2
        assert b.series.truncate(Fraction(-2)) == z("z^(-5/2)")
        assert b.series.filter(lambda k: k[0] == -2) == z("z^-2")
        r = residual(P, b)
        assert r.is_zero() or r.valuation() >= default_target(P)

    def test_repeated_branch(self):
        with pytest.raises(DomainError, match="repeated branch"):
            newton_puiseux(cover("-2*z^-1", "z^-2"))

    def test_irrational_root(self):
        with pytest.raises(DomainError):
            newton_puiseux(cover("0", "-2*z^-2"))

    def test_step_budget(self):
        P = cover("0", "-1 - z")
        with pytest.raises(ResourceError):
            newton_puiseux(P, target_valuation=10 ** 6, max_steps=5)

    @pytest.mark.parametrize("target", [0, 3, 7])
    def test_residual_contract_on_suite(self, target):
        for P in cover_suite(3, CoverSuiteConfig(count=10)):
            bs = newton_puiseux(P, target)
            assert sum(b.multiplicity for b in bs) == P.degree
            for b in bs:
                assert residual(P, b).is_zero() or residual(P, b).valuation() >= target


class TestIrregularValues:
    def test_examples(self):
        assert set(irregular_values(cover("0", "-z^-4")).values) == {z("z^-1"), z("-z^-1")}
        irr = irregular_values(cover("0", "-z^-3"))
        assert set(irr.values) == {z("2*z^(-1/2)"), z("-2*z^(-1/2)")}
        assert irr.galois_complete
        assert set(irregular_values(cover("-3*z^-1", "2*z^-2")).values) == {z("0")}

    def test_branch_value_sign(self):
        assert branch_value(z("z^-2 + z^-1 + 4")) == z("-z^-1")

    def test_closed_under_galois(self):
        from meroflat.goodness import galois_status, is_good_set

        for P in cover_suite(5, CoverSuiteConfig(count=15)):
            irr = irregular_values(P)
            assert is_good_set(irr.values).good
            if irr.galois_complete:
                assert galois_status(irr.values) in ("trivial", "closed")


class TestLogarithmic:
    def test_examples(self):
        assert is_logarithmic(cover("-3*z^-1", "0"))
        assert not is_logarithmic(cover("0", "-z^-4"))
        assert is_logarithmic(cover("-5"))

    @pytest.mark.parametrize("coeffs,expected", [
        (("0", "-z^-4"), 1),
        (("-3*z^-1", "0"), 0),
        (("0", "0", "-z^-7"), 2),
        (("0", "-z^-3"), 1),
        (("z^-5",), 4),
    ])
    def test_pole_order(self, coeffs, expected):
        assert pole_order(cover(*coeffs)) == expected

    def test_kappa_examples(self):
        P = cover("0", "-z^-4")
        assert kappa_shift(P, z("-z^-1")) == cover("2*z^-2", "0")
        assert kappa_shift(P, z("0")) == P
        a = z("3*z^-2 - z^(-1/2)")
        assert kappa_shift(kappa_shift(P, a), -a) == P
        with pytest.raises(DomainError):
            kappa_shift(P, z("z^-1 + 1"))

    def test_components_become_logarithmic(self):
        P = cover("0", "-z^-4")
        comps = components(P)
        assert set(comps) == {z("z^-1"), z("-z^-1")}
        for a, (C, _) in comps.items():
            assert is_logarithmic(kappa_shift(C, a))


class TestRoundtrip:
    def test_examples(self):
        pm = [PuiseuxBranch(z(s), 1, 1, INF) for s in ("z^-2", "-z^-2")]
        assert section_roundtrip(pm) == cover("0", "-z^-4")
        assert section_roundtrip([PuiseuxBranch(z("z^-1 + 3"), 1, 1, INF)]) == cover("-z^-1 - 3")
        assert section_roundtrip([PuiseuxBranch(z("z^(-3/2)"), 2, 2, INF)]) == cover("0", "-z^-3")

    def test_precision_shortfall(self):
        b = PuiseuxBranch(z("z^-1"), 1, 1, Fraction(0))
        assert section_roundtrip([b], with_bounds=True)[1] == [0]
        with pytest.raises(ResourceError):
            section_roundtrip([b], min_precision=1)

    def test_roundtrip_of_expansion(self):
        for P in cover_suite(7, CoverSuiteConfig(count=15)):
            Q, bounds = section_roundtrip(newton_puiseux(P), with_bounds=True)
            assert Q == P.truncated(bounds)


class TestFibers:
    def test_examples(self):
        assert fiber_partition(cover("0", "-z"), 1) == Partition((1, 1))
        assert fiber_partition(cover("-2", "1"), Fraction(5, 3)) == Partition((2,))
        with pytest.raises(DomainError, match="base point on H"):
            fiber_partition(cover("0", "-z"), 0)

    def test_generic_partition_and_resultant(self):
        part, res = generic_fiber_partition(cover("0", "-z"))
        assert part == Partition((1, 1))
        assert res == z("-4*z")
        assert discriminant(cover("0", "-z")) == z("4*z")
        part, res = generic_fiber_partition(cover("-2*z", "z^2"))
        assert part == Partition((2,)) and res.is_zero()

    def test_special_fibers_refine_generic(self):
        rng = random.Random(4)
        for _ in range(40):
            a, b = (Fraction(rng.randint(-3, 3)) for _ in range(2))
            # (xi - z)(xi - a)(xi - b*z^2) collides exactly where the roots meet
            P = PlaneCover.from_roots([z("z"), parse(str(a)), parse(f"{b}*z^2")])
            if resultant_with_derivative(P).is_zero():
                continue
            generic, _ = generic_fiber_partition(P)
            for z0 in (Fraction(1), Fraction(-1), a, Fraction(2)):
                if z0:
                    special = fiber_partition(P, z0)
                    assert partition_leq(special, generic)
