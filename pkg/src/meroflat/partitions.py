"""Partitions, points of symmetric products, and Lagrangian cycle bookkeeping."""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from functools import lru_cache

from .algebra import rational
from .errors import DomainError


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p <= 0 for p in parts):
            raise DomainError(f"a partition needs positive parts, got {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions_of(r):
    """All partitions of r, parts decreasing, in reverse lexicographic order."""
    out = []

    def rec(remaining, cap, acc):
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for p in range(min(cap, remaining), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(r, r, [])
    return out


def _vector(entry):
    if isinstance(entry, (list, tuple)):
        return tuple(rational(x) for x in entry)
    return (rational(entry),)


@dataclass(frozen=True)
class MultisetPoint:
    """A point of S^r(V): a multiset of r vectors of rationals."""

    entries: tuple

    def __post_init__(self):
        vecs = tuple(sorted(_vector(e) for e in self.entries))
        if not vecs:
            raise DomainError("a point of S^r(V) needs r >= 1 entries")
        if len({len(v) for v in vecs}) != 1:
            raise DomainError("all entries must have the same dimension")
        object.__setattr__(self, "entries", vecs)

    @property
    def r(self):
        return len(self.entries)

    @property
    def dim(self):
        return len(self.entries[0])


def partition_of_point(alpha):
    """Multiplicities of the distinct entries, and the number of distinct entries."""
    counts = Counter(alpha.entries)
    P = Partition(tuple(counts.values()))
    return P, len(counts)


def partition_leq(P1, P2):
    """P1 < P2 in the refinement order: P2's parts can be grouped to give P1's.

    Decided by depth-first assignment of P2's parts to P1's bins, largest
    parts first, with equal-bin symmetry pruning.
    """
    if P1.total != P2.total:
        raise DomainError(f"partitions of different totals: {P1.total} vs {P2.total}")
    bins = list(P1.parts)
    items = list(P2.parts)
    if len(items) < len(bins):
        return False
    remaining = [b for b in bins]

    def place(i):
        if i == len(items):
            return all(x == 0 for x in remaining)
        tried = set()
        for j, room in enumerate(remaining):
            if room >= items[i] and (room, bins[j]) not in tried:
                tried.add((room, bins[j]))
                remaining[j] -= items[i]
                if place(i + 1):
                    remaining[j] += items[i]
                    return True
                remaining[j] += items[i]
        return False

    # surjectivity: every bin must receive something, guaranteed since bins are positive and sums match
    return place(0)


def strata_above(P):
    """{P' : P < P'} among partitions of the same total."""
    return [Q for Q in partitions_of(P.total) if partition_leq(P, Q)]


def strata_below(P):
    """{P' : P' < P}: the strata met by the closure S^r_P(V)."""
    return [Q for Q in partitions_of(P.total) if partition_leq(Q, P)]


# -- Chow coordinates ---------------------------------------------------------

def chow_basis(r, dim):
    """Multi-indices k in N^dim with 1 <= |k| <= r: graded by |k|, lexicographically decreasing within a degree."""
    out = []
    for deg in range(1, r + 1):
        level = [k for k in product(range(deg + 1), repeat=dim) if sum(k) == deg]
        out.extend(sorted(level, reverse=True))
    return out


def chow_coordinates(alpha):
    """Coefficients of prod_i (1 + v_i) in Sym^r(K + V), without the x_0^r coefficient.

    The coefficient at multi-index k is the elementary multisymmetric
    function of the entries of alpha indexed by k.
    """
    dim = alpha.dim
    # polynomial in x_1..x_dim (x_0 dehomogenized); keys are exponent tuples
    poly = {(0,) * dim: Fraction(1)}
    for v in alpha.entries:
        nxt = {}
        for k, c in poly.items():
            nxt[k] = nxt.get(k, 0) + c
            for j in range(dim):
                if v[j]:
                    kk = k[:j] + (k[j] + 1,) + k[j + 1:]
                    nxt[kk] = nxt.get(kk, 0) + c * v[j]
        poly = nxt
    return tuple(poly.get(k, Fraction(0)) for k in chow_basis(alpha.r, dim))


# -- Lagrangian cycles -----------------------------------------------------------

@dataclass(frozen=True)
class LagrangianCycle:
    """Finite sum of named components with non-negative integer multiplicities."""

    multiplicities: tuple   # sorted (name, m) pairs with m > 0

    def __post_init__(self):
        items = self.multiplicities
        if isinstance(items, dict):
            items = items.items()
        clean = {}
        for name, m in items:
            if int(m) != m or m < 0:
                raise DomainError(f"multiplicity of {name} must be a non-negative integer")
            if m:
                clean[str(name)] = clean.get(str(name), 0) + int(m)
        object.__setattr__(self, "multiplicities", tuple(sorted(clean.items())))

    @classmethod
    def of(cls, **kw):
        return cls(tuple(kw.items()))

    def as_dict(self):
        return dict(self.multiplicities)

    @property
    def support(self):
        return frozenset(n for n, _ in self.multiplicities)

    @property
    def total(self):
        return sum(m for _, m in self.multiplicities)

    def is_zero(self):
        return not self.multiplicities

    def __add__(self, other):
        d = self.as_dict()
        for n, m in other.multiplicities:
            d[n] = d.get(n, 0) + m
        return LagrangianCycle(tuple(d.items()))

    def __str__(self):
        if not self.multiplicities:
            return "0"
        return " + ".join(n if m == 1 else f"{m}*{n}" for n, m in self.multiplicities)


def cc_leq(cc, bound):
    """Componentwise domination cc <= bound."""
    b = bound.as_dict()
    return all(m <= b.get(n, 0) for n, m in cc.multiplicities)


def ordered_partitions(cycle):
    """All ordered tuples of nonzero cycles summing to ``cycle``.

    The number of parts is at most the total multiplicity.  Output order:
    by number of parts, then lexicographically by the multiplicity vectors
    of the parts (largest first).
    """
    if cycle.is_zero():
        raise DomainError("ordered partitions of the zero cycle are not defined")
    names = [n for n, _ in cycle.multiplicities]
    target = tuple(m for _, m in cycle.multiplicities)
    subs = [v for v in product(*(range(m, -1, -1) for m in target)) if any(v)]

    @lru_cache(maxsize=None)
    def comps(rest, k):
        if k == 0:
            return [()] if not any(rest) else []
        out = []
        for v in subs:
            if all(a <= b for a, b in zip(v, rest)):
                left = tuple(b - a for a, b in zip(v, rest))
                if k - 1 <= sum(left) and (k > 1 or not any(left)):
                    out.extend((v,) + tail for tail in comps(left, k - 1))
        return out

    result = []
    for k in range(1, sum(target) + 1):
        for tup in comps(target, k):
            result.append(tuple(LagrangianCycle(tuple(zip(names, v))) for v in tup))
    return result


__all__ = [
    "Partition", "partitions_of", "MultisetPoint", "partition_of_point", "partition_leq",
    "strata_above", "strata_below", "chow_basis", "chow_coordinates", "LagrangianCycle",
    "cc_leq", "ordered_partitions",
]
