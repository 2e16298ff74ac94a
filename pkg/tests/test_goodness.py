import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meroflat.errors import DomainError
from meroflat.expr import parse
from meroflat.goodness import (
    IrregularValueSet,
    bad_locus,
    galois_status,
    is_good_set,
    monomial_pullback,
    specialize,
)
from strategies import polar_polys

Z12 = ("z1", "z2")


def vs(texts, divs=Z12, tame=()):
    return IrregularValueSet.from_values([parse(t, divs, tame) for t in texts], divs + tame, len(divs))


def test_good_fixture():
    assert is_good_set(vs(["z1^-1*z2^-1", "z1^-1", "0"])).good


def test_bad_fixture_names_the_pair():
    res = is_good_set(vs(["z1^-1*z2^-1", "z1^-1", "z2^-1", "0"]))
    assert not res.good
    assert res.diagnostic.kind == "undefined-difference-order"
    assert set(res.diagnostic.witness) == {parse("z1^-1", Z12), parse("z2^-1", Z12)}


def test_undefined_element_order():
    res = is_good_set(vs(["z1^-1*z2"]))
    assert (res.good, res.diagnostic.kind) == (False, "undefined-order")


def test_incomparable_orders():
    res = is_good_set(vs(["z1^-2*z2^-1", "z1^-1*z2^-2"]))
    assert res.diagnostic.kind in ("incomparable-orders", "undefined-difference-order")
    assert not res.good


@given(st.lists(polar_polys(e=3), max_size=5))
def test_single_divisor_sets_are_good(values):
    # oracle: orders in (1/e)Z are totally ordered and every difference has a defined order
    I = IrregularValueSet.from_values(values, ("z",), 1)
    for a, b in combinations(I.elements, 2):
        d = a - b
        assert min(k[0] for k, _ in d.items()) < 0
    assert is_good_set(I).good


def _random_good_set(rng):
    """Good sets in two divisor variables built on a chain of orders."""
    chain = sorted({(-rng.randint(0, 3), -rng.randint(0, 3)) for _ in range(3)})
    chain = [m for m in chain if all(comp(m, n) for n in chain)]
    values = []
    for m in chain:
        if m == (0, 0):
            values.append("0")
            continue
        c = rng.choice([1, -1, 2, Fraction(1, 2)])
        extra = " + z1^-1*z2^0" if rng.random() < 0.3 and m[0] < -1 else ""
        values.append(f"{c}*z1^{m[0]}*z2^{m[1]}{extra}")
    return vs(values)


def comp(m, n):
    return all(a <= b for a, b in zip(m, n)) or all(b <= a for a, b in zip(m, n))


@pytest.mark.parametrize("seed", range(5))
def test_subsets_and_translation_inherit_goodness(seed):
    rng = random.Random(seed)
    for _ in range(20):
        I = _random_good_set(rng)
        if not is_good_set(I).good:
            continue
        for k in range(len(I) + 1):
            for J in combinations(I.elements, k):
                if J:
                    assert is_good_set(IrregularValueSet.from_values(J, Z12, 2)).good
        c = parse("5*z1^-3*z2^-3", Z12)
        assert is_good_set(I.translate(c)).good


def test_pullback_examples():
    w = monomial_pullback(vs(["z^-1"], ("z",)), {"z": {"w": 2}})
    assert w.elements == (parse("w^-2", ("w",)),)
    y = monomial_pullback(vs(["x1^-1"], ("x1",)), {"x1": {"y1": 1, "y2": 1}})
    assert y.elements == (parse("y1^-1*y2^-1", ("y1", "y2")),)
    good = monomial_pullback(vs(["z1^-1*z2^-1", "z1^-1", "0"]), {"z1": {"w1": 2}, "z2": {"w2": 1}})
    assert is_good_set(good).good


def test_pullback_rejects_unit_image():
    with pytest.raises(DomainError, match="not a ramified cover map"):
        monomial_pullback(vs(["z^-1"], ("z",)), {"z": {}})


def test_pullback_preserves_goodness_on_random_sets():
    rng = random.Random(11)
    checked = 0
    while checked < 120:
        I = _random_good_set(rng)
        if not is_good_set(I).good:
            continue
        sub = {
            "z1": {"w1": rng.randint(1, 3), "w2": rng.randint(0, 1)},
            "z2": {"w2": rng.randint(1, 3)},
        }
        assert is_good_set(monomial_pullback(I, sub)).good
        checked += 1


def test_bad_locus_examples():
    assert bad_locus(vs(["3*z1^-1"])).components == ()
    xy = ("x",), ("y",)
    comp1 = bad_locus(vs(["y*x^-1"], *xy)).components
    assert [(c.equation, c.divisors) for c in comp1] == [(parse("y", *xy), ("x",))]
    comp2 = bad_locus(vs(["x^-1", "y*x^-1"], *xy)).components
    assert [(c.equation, c.divisors) for c in comp2] == [(parse("y", *xy), ("x",)), (parse("1 - y", *xy), ("x",))]


@pytest.mark.parametrize("y0", [Fraction(-2), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)])
def test_bad_locus_predicts_specialization(y0):
    xy = ("x",), ("y",)
    I = vs(["x^-1", "y*x^-1"], *xy)
    on_locus = bad_locus(I).contains({"y": y0})
    assert on_locus == (y0 in (0, 1))
    assert is_good_set(specialize(I, {"y": y0})).good == (not on_locus)


def test_bad_locus_requires_generic_goodness():
    with pytest.raises(DomainError, match="not good at base point"):
        bad_locus(vs(["z1^-1", "z2^-1"]))


def test_galois_status():
    z = ("z",)
    assert galois_status(vs(["z^-1"], z)) == "trivial"
    assert galois_status(vs(["z^(-1/2)", "-z^(-1/2)"], z)) == "closed"
    assert galois_status(vs(["z^(-1/2)"], z)) == "not-closed"
    assert galois_status(vs(["z^(-1/3)"], z)) == "unverifiable"
    # the verdict itself is independent of the Galois status
    assert is_good_set(vs(["z^(-1/2)"], z)).good
