"""Goodness of finite sets of ramified irregular values.

A set I of polar classes is good when ord(a) and ord(a - b) are defined
for all a, b in I and both sets of orders are totally ordered for the
componentwise order.  Classes are stored as canonical polar parts.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .algebra import (
    ZERO,
    LaurentPuiseuxPoly,
    comparable,
    common_ramification,
    galois_conjugate,
    ord_,
    polar_class,
    unit_part,
)
from .errors import DomainError


def _sort_key(f):
    return tuple((tuple(k), v) for k, v in f.items())


@dataclass(frozen=True)
class IrregularValueSet:
    """Finite set of distinct polar classes over a fixed variable layout."""

    elements: tuple
    variables: tuple
    ndiv: int

    @classmethod
    def from_values(cls, values, variables=None, ndiv=None):
        values = list(values)
        if variables is None:
            if not values:
                raise ValueError("variables are required for an empty set")
            variables, ndiv = values[0].variables, values[0].ndiv
        variables = tuple(variables)
        ndiv = len(variables) if ndiv is None else ndiv
        seen = {}
        for v in values:
            if v.variables != variables or v.ndiv != ndiv:
                raise ValueError("all classes must share one variable layout")
            p = polar_class(v)
            seen[p] = True
        return cls(tuple(sorted(seen, key=_sort_key)), variables, ndiv)

    @property
    def ramification(self):
        return common_ramification(self.elements)

    def __contains__(self, f):
        return polar_class(f) in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def translate(self, c):
        return IrregularValueSet.from_values([a + c for a in self.elements], self.variables, self.ndiv)


@dataclass(frozen=True)
class GoodnessDiagnostic:
    kind: str | None = None          # None when good
    witness: tuple = ()
    orders: dict = field(default_factory=dict)
    galois: str = "trivial"          # trivial | closed | not-closed | unverifiable


class GoodnessResult(NamedTuple):
    good: bool
    diagnostic: GoodnessDiagnostic


def _first_incomparable(named_orders):
    items = list(named_orders)
    for (ka, ma), (kb, mb) in combinations(items, 2):
        if not comparable(ma, mb):
            return ka, kb
    return None


def galois_status(I):
    """Closure of I under z_i^(1/e) -> zeta z_i^(1/e), checked where Q can see it.

    Conjugates whose coefficients would leave Q cannot be formed; the
    status is then ``unverifiable`` unless some representable conjugate
    is already missing (``not-closed``).
    """
    e = I.ramification
    if e == 1:
        return "trivial"
    unverifiable = False
    for i in range(I.ndiv):
        for t in range(1, e):
            for a in I.elements:
                try:
                    b = galois_conjugate(a, t, index=i)
                except DomainError:
                    unverifiable = True
                    continue
                if b not in I.elements:
                    return "not-closed"
    return "unverifiable" if unverifiable else "closed"


def is_good_set(I):
    """Decide goodness; the diagnostic names the first failure found."""
    elems = I.elements
    orders = {a: ord_(a) for a in elems}
    galois = galois_status(I)
    for a in elems:
        if orders[a] is None:
            return GoodnessResult(False, GoodnessDiagnostic("undefined-order", (a,), orders, galois))
    diff_orders = {}
    for a, b in combinations(elems, 2):
        m = ord_(a - b)
        if m is None:
            return GoodnessResult(
                False, GoodnessDiagnostic("undefined-difference-order", (a, b), orders, galois)
            )
        diff_orders[(a, b)] = m
    bad = _first_incomparable((a, orders[a]) for a in elems)
    if bad:
        return GoodnessResult(False, GoodnessDiagnostic("incomparable-orders", bad, orders, galois))
    bad = _first_incomparable(diff_orders.items())
    if bad:
        return GoodnessResult(
            False, GoodnessDiagnostic("incomparable-difference-orders", bad[0] + bad[1], orders, galois)
        )
    return GoodnessResult(True, GoodnessDiagnostic(None, (), orders, galois))


# -- bad locus --------------------------------------------------------------

@dataclass(frozen=True)
class BadLocusComponent:
    equation: LaurentPuiseuxPoly
    divisors: tuple              # names of divisor variables with negative order
    source: tuple                # the class (or pair of classes) it came from


@dataclass(frozen=True)
class BadLocusDescription:
    components: tuple

    def contains(self, point):
        """True if the point (divisor variables at 0, tame values given) lies on a component."""
        return any(_vanishes_at(c.equation, point) for c in self.components)


def _generic_order(f):
    p = polar_class(f)
    if p.is_zero():
        return None, None
    m = tuple(min(k[i] for k, _ in p.items()) for i in range(f.ndiv))
    return p, m


def _locus_equation(f):
    """Unit part of f restricted to the divisors where its order is negative.

    Raises DomainError if the order is undefined for generic values of the
    tame variables.
    """
    p, m = _generic_order(f)
    if p is None:
        return None, ()
    if any(x > 0 for x in m):
        raise DomainError(f"not good at base point: ord({p}) undefined for all parameter values")
    u = unit_part(p, m)
    neg = [i for i in range(f.ndiv) if m[i] < 0]
    restricted = u.filter(lambda k: all(k[i] == 0 for i in neg))
    generic = u.filter(lambda k: all(x == 0 for x in k[: f.ndiv]))
    if generic.is_zero():
        raise DomainError(f"not good at base point: unit part of {p} vanishes identically on the divisor")
    return (restricted, m), tuple(f.variables[i] for i in neg)


def _vanishes_at(eq, point):
    at_origin = eq.filter(lambda k: all(x == 0 for x in k[: eq.ndiv]))
    values = {n: Fraction(0) for n in eq.variables[: eq.ndiv]}
    values.update({n: point.get(n, Fraction(0)) for n in eq.variables[eq.ndiv:]})
    return at_origin.evaluate(values) == 0


def bad_locus(I):
    """Equations cutting out the points of the divisor where I stops being good."""
    comps = []
    generic_orders = []
    seen = set()

    def handle(f, source):
        res, divs = _locus_equation(f)
        if res is None:
            return
        eq, m = res
        generic_orders.append((source, m))
        if eq.is_constant():
            return  # unit part never vanishes
        key = (eq, divs)
        if key not in seen:
            seen.add(key)
            comps.append(BadLocusComponent(eq, divs, source))

    for a in I.elements:
        handle(a, (a,))
    elem_orders = list(generic_orders)
    generic_orders.clear()
    for a, b in combinations(I.elements, 2):
        handle(a - b, (a, b))
    for group in (elem_orders, generic_orders):
        bad = _first_incomparable(group)
        if bad:
            raise DomainError("not good at base point: generic orders are not totally ordered")
    return BadLocusDescription(tuple(comps))


def specialize(I, point):
    """Re-expand every class around the point where tame variables take the given values."""
    return IrregularValueSet.from_values(
        [polar_class(a.recenter(point)) for a in I.elements], I.variables, I.ndiv
    )


# -- monomial pullback --------------------------------------------------------

def monomial_pullback(I, substitution):
    """Pull back along x_i -> prod_j y_j^k_ij.

    ``substitution`` maps source variable names to ``{target: k}`` with
    non-negative integer k.  Unlisted source variables map to themselves.
    Target divisor variables are those reached by a source divisor variable.
    """
    src = I.variables
    images = {}
    for s in src:
        img = substitution.get(s, {s: 1})
        for t, k in img.items():
            if int(k) != k or k < 0:
                raise DomainError(f"exponent {k} for {s}->{t} must be a non-negative integer")
        images[s] = {t: int(k) for t, k in img.items() if k}
    for s in src[: I.ndiv]:
        if not images[s]:
            raise DomainError(f"not a ramified cover map: divisor variable {s} maps to a unit")
    div_targets, tame_targets = [], []
    for s in src[: I.ndiv]:
        for t in images[s]:
            if t not in div_targets:
                div_targets.append(t)
    for s in src[I.ndiv:]:
        for t in images[s]:
            if t not in div_targets and t not in tame_targets:
                tame_targets.append(t)
    targets = tuple(div_targets + tame_targets)
    pos = {t: i for i, t in enumerate(targets)}

    def pull(exps):
        out = [Fraction(0)] * len(targets)
        for s, e in zip(src, exps):
            for t, k in images[s].items():
                out[pos[t]] += e * k
        return out

    pulled = [a.map_exponents(pull, targets, len(div_targets)) for a in I.elements]
    return IrregularValueSet.from_values(pulled, targets, len(div_targets))


__all__ = [
    "IrregularValueSet", "GoodnessResult", "GoodnessDiagnostic", "is_good_set", "galois_status",
    "BadLocusComponent", "BadLocusDescription", "bad_locus", "specialize", "monomial_pullback",
    "ZERO",
]
