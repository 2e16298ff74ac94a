import math
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meroflat.connections import (
    Block,
    GoodModel1D,
    LatticeSpec,
    classify_localization,
    descent,
    dm_lattice,
    dm_pullback_sandwich_check,
    dm_shift,
    graded_table,
    ramified_pullback,
    sandwich_integers,
    spec_reg,
    twist,
    window_shifts,
)
from meroflat.errors import DomainError
from meroflat.expr import parse
from meroflat.fixtures import random_level, random_model, random_residue
from strategies import rationals

F = Fraction
ZERO = parse("0")


def model(*pairs):
    return GoodModel1D.of(*((parse(a), r) for a, r in pairs))


def test_dm_examples():
    m = model(("0", [(F(1, 3), 2)]))
    assert dm_lattice(m).shift(0, F(1, 3)) == 0
    assert graded_table(dm_lattice(m)).as_dict() == {F(-1, 3): (2, {F(1, 3): 2})}
    assert graded_table(dm_lattice(model(("0", [(0, 1)])))).as_dict() == {0: (1, {0: 1})}
    five_halves = dm_lattice(model(("0", [(F(5, 2), 1)])))
    assert five_halves.shift(0, F(5, 2)) == 2
    assert graded_table(five_halves).levels == [F(-1, 2)]


def test_graded_table_two_blocks():
    m = model(("0", [(0, 1)]), ("z^-1", [(F(1, 2), 1)]))
    t = graded_table(dm_lattice(m))
    assert t.as_dict() == {0: (1, {0: 1}), F(-1, 2): (1, {F(1, 2): 1})}
    assert t.levels == [0, F(-1, 2)]


def test_unnormalized_lattice_warns():
    m = model(("0", [(F(1, 3), 1)]))
    t = graded_table(LatticeSpec(m, {(0, F(1, 3)): 3}))
    assert t.warnings == ("lattice not DM-normalized at level 0",)
    assert t.rank == 1


def test_model_validation():
    with pytest.raises(DomainError):
        model(("z^-1 + 1", [(0, 1)]))
    with pytest.raises(DomainError):
        model(("0", [(0, 0)]))
    with pytest.raises(DomainError):
        LatticeSpec(model(("0", [(0, 1)])), {})


def test_spec_reg_examples():
    m = model(("z^-1", [(0, 1)]), ("0", [(F(1, 3), 1)]))
    zero = LatticeSpec(m, {(0, 0): 0, (1, F(1, 3)): 0})
    assert spec_reg(zero) == ((F(1, 3), 1),)
    assert spec_reg(dm_lattice(model(("z^-1", [(0, 1)])))) == ()
    two = LatticeSpec(m, {(0, 0): 0, (1, F(1, 3)): 2})
    assert spec_reg(two) == ((F(-5, 3), 1),)


@pytest.mark.parametrize("alpha,expected", [(0, "star"), (1, "shriek"), (F(1, 2), "both"), ((0, 1), "neither")])
def test_classify(alpha, expected):
    alphas = alpha if isinstance(alpha, tuple) else (alpha,)
    m = model(("0", [(a, 1) for a in alphas]))
    spec = LatticeSpec(m, {(0, F(a)): 0 for a in alphas})
    assert classify_localization(spec) == expected


@given(rationals, rationals)
def test_window_uniqueness(alpha, c):
    assert window_shifts(alpha, c) == [dm_shift(alpha, c)]


@given(st.integers(0, 10 ** 6), rationals)
def test_rank_conservation(seed, c):
    m = random_model(random.Random(seed))
    t = graded_table(dm_lattice(m, c), c)
    assert t.rank == m.rank
    assert not t.warnings
    assert all(c - 1 < a <= c for a in t.levels)


@given(st.integers(0, 10 ** 6), st.integers(-4, 4), rationals)
def test_integer_twist_shifts_lattice(seed, k, c):
    m = random_model(random.Random(seed))
    base = dict(dm_lattice(m, c).shifts)
    twisted = dict(dm_lattice(twist(m, ZERO, k), c).shifts)
    assert twisted == {(i, a + k): n + k for (i, a), n in base.items()}


def _reduce(x, c):
    """x + j in (c - 1, c] for the integer j that fits."""
    return x - math.ceil(x - c)


@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_pullback_scales_levels(seed, e):
    rng = random.Random(seed)
    m = random_model(rng)
    c = random_level(rng)
    before = Counter()
    for a, r, _ in graded_table(dm_lattice(m, c), c).entries:
        before[_reduce(e * a, e * c)] += r
    after = graded_table(dm_lattice(ramified_pullback(m, e), e * c), e * c)
    assert {a: r for a, r, _ in after.entries} == dict(before)


def test_classify_minimal_extension_regime():
    rng = random.Random(5)
    for _ in range(50):
        m = random_model(rng)
        if any(a.denominator == 1 for b in m.blocks for a, _ in b.residues):
            continue
        c = F(-rng.randint(1, 9), 10)
        assert classify_localization(dm_lattice(m, c)) == "both"


def test_pullback_examples():
    m = model(("z^-1", [(F(1, 3), 1)]))
    pulled = ramified_pullback(m, 2, "w")
    assert pulled.blocks[0].value == parse("w^-2", ("w",))
    assert pulled.blocks[0].residues == ((F(2, 3), 1),)


@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_descent_roundtrip(seed, e):
    m = random_model(random.Random(seed))
    assert descent(ramified_pullback(m, e), e) == m


def test_descent_needs_orbit_closure():
    half = model(("z^-1", [(0, 1)]))
    with pytest.raises(DomainError, match="not closed"):
        descent(half, 2)
    both = model(("z^-1", [(0, 1)]), ("-z^-1", [(0, 1)]))
    assert {b.value for b in descent(both, 2).blocks} == {parse("z^(-1/2)"), parse("-z^(-1/2)")}


def test_sandwich_examples():
    assert dm_pullback_sandwich_check(model(("0", [(F(1, 3), 1)])), 2, 0)
    lo, mid, hi = sandwich_integers(0, 3, 0)
    assert mid == hi and lo <= mid
    with pytest.raises(DomainError):
        dm_pullback_sandwich_check(model(("0", [(0, 2)])), 2)


def test_sandwich_random():
    rng = random.Random(2)
    for _ in range(200):
        m = GoodModel1D((Block(ZERO, ((random_residue(rng), 1),)),))
        assert dm_pullback_sandwich_check(m, rng.randint(1, 5), random_level(rng))


def test_twist_examples():
    m = model(("z^-1", [(0, 1)]), ("0", [(F(1, 2), 2)]))
    assert twist(m, ZERO, 0) == m
    a = parse("3*z^-2")
    assert twist(twist(m, a, F(2, 7)), -a, F(-2, 7)) == m
    t = twist(model(("z^-1", [(0, 1)])), parse("-z^-1"), F(1, 3))
    assert t == model(("0", [(F(1, 3), 1)]))
