from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from meroflat import upoly as U
from strategies import rationals

X = sympy.Symbol("x")
roots_lists = st.lists(rationals, min_size=1, max_size=5)


def to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], X)


@given(roots_lists)
def test_rational_roots_recover_multiset(roots):
    p = U.from_roots(roots)
    found = U.rational_roots(U.scale(p, Fraction(7, 3)))
    expected = {}
    for r in roots:
        expected[r] = expected.get(r, 0) + 1
    assert found == sorted(expected.items())


@given(roots_lists)
def test_squarefree_decomposition_matches_sympy(roots):
    p = U.from_roots(roots)
    ours = [to_sympy(U.monic(a)) for a in U.squarefree_decomposition(p)]
    _, theirs = sympy.sqf_list(to_sympy(p))
    by_mult = {m: f.monic() for f, m in theirs}
    for i, a in enumerate(ours, start=1):
        assert a.as_expr() == by_mult.get(i, sympy.Poly(1, X)).as_expr()


@given(st.lists(rationals, max_size=5), st.lists(rationals, min_size=1, max_size=4).filter(lambda q: q[-1]))
def test_divmod_identity(p, q):
    p, q = U.normalize(p), U.normalize(q)
    quo, rem = U.divmod_(p, q)
    assert U.add(U.mul(quo, q), rem) == p
    assert U.degree(rem) < U.degree(q)


@given(rationals, st.integers(1, 5))
def test_exact_root(q, n):
    r = U.exact_root(q ** n, n)
    assert r ** n == q ** n
    if n % 2:
        assert r == q
    assert U.exact_root(Fraction(2), 2) is None
    assert U.exact_root(Fraction(-4), 2) is None
