"""One-variable meromorphic spectral covers.

A cover is a monic polynomial

    xi^d + c_1 xi^(d-1) + ... + c_d

whose coefficients are Laurent-Puiseux polynomials in the base variable z.
Points of the cover pair with dz, so a branch xi(z) is the form xi(z) dz:
"logarithmic" means every branch has valuation >= -1, and the closure in
T*X(log H)(N H) is proper iff every branch has valuation >= -N-1.

Newton-Puiseux expansion works over Q only; an edge whose characteristic
equation needs an irrational root raises :class:`DomainError`.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm

from . import upoly
from .algebra import (
    LaurentPuiseuxPoly,
    common_ramification,
    derivative,
    exact_div,
    galois_multiplier,
    integrate_polar,
    polar_class,
)
from .errors import DomainError, ResourceError
from .goodness import IrregularValueSet
from .partitions import Partition

INF = math.inf


def _const(c, var):
    return LaurentPuiseuxPoly({(Fraction(0),): c}, (var,), 1)


def _mono(e, c, var):
    return LaurentPuiseuxPoly({(Fraction(e),): c}, (var,), 1)


@dataclass(frozen=True)
class PlaneCover:
    """Monic fiber polynomial over a punctured disc; frame xi*dz."""

    coefficients: tuple          # c_1 .. c_d
    base: str = "z"
    fiber: str = "xi"

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise DomainError("a cover needs degree >= 1")
        for c in coeffs:
            if c.variables != (self.base,) or c.ndiv != 1:
                raise DomainError(f"cover coefficients must be polynomials in {self.base} alone")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_ascending(cls, a, base="z", fiber="xi"):
        """From a_0..a_d with a_i the coefficient of xi^i (a_d must be 1)."""
        a = list(a)
        if a[-1] != 1:
            raise DomainError("cover polynomial must be monic")
        return cls(tuple(reversed(a[:-1])), base, fiber)

    @classmethod
    def from_roots(cls, roots, base="z", fiber="xi"):
        """prod (xi - r) for roots with coefficients in Q[z^(+-1/e)]."""
        poly = [_const(1, base)]
        for r in roots:
            nxt = [_const(0, base)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * r
            poly = nxt
        return cls.from_ascending(poly, base, fiber)

    @property
    def degree(self):
        return len(self.coefficients)

    def ascending(self):
        """[a_0, ..., a_d] with a_i the coefficient of xi^i."""
        return list(reversed(self.coefficients)) + [_const(1, self.base)]

    @property
    def ramification(self):
        return common_ramification(self.coefficients)

    def __call__(self, xi):
        """P(z, xi) for a Laurent-Puiseux polynomial xi."""
        acc = _const(0, self.base)
        for a in reversed(self.ascending()):
            acc = acc * xi + a
        return acc

    def __mul__(self, other):
        a, b = self.ascending(), other.ascending()
        out = [_const(0, self.base)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return PlaneCover.from_ascending(out, self.base, self.fiber)

    def truncated(self, bounds):
        """Drop terms of c_k at exponents >= bounds[k-1]."""
        return PlaneCover(
            tuple(c.truncate(b) if b != INF else c for c, b in zip(self.coefficients, bounds)),
            self.base, self.fiber,
        )


@dataclass(frozen=True)
class PuiseuxBranch:
    """Truncated root of a cover, standing for ``multiplicity`` Galois-conjugate roots.

    ``series`` is in z^(1/ramification); the true root differs from it by
    a series of valuation >= ``guaranteed_valuation`` (inf for an exact root).
    """

    series: LaurentPuiseuxPoly
    ramification: int
    multiplicity: int
    guaranteed_valuation: object   # Fraction or math.inf
    base_ramification: int = 1

    @property
    def valuation(self):
        """Valuation of the root (a lower bound when the truncation is empty)."""
        v = self.series.valuation()
        return self.guaranteed_valuation if v is None else v

    def conjugate_turns(self):
        """Turns t with z^x -> exp(2 pi i t x) z^x running over this branch's conjugates."""
        return [self.base_ramification * j for j in range(self.multiplicity)]


# -- Newton polygon --------------------------------------------------------------

def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_edges(a):
    """Edges (i0, v0, i1, v1, gamma) of the lower hull of {(i, val a_i)}.

    gamma = -(slope) is the valuation of the roots on that edge; edges run
    left to right, so gamma decreases.
    """
    pts = [(i, c.valuation()) for i, c in enumerate(a) if not c.is_zero()]
    hull = _lower_hull(pts)
    return [
        (i0, v0, i1, v1, Fraction(v0 - v1) / (i1 - i0))
        for (i0, v0), (i1, v1) in zip(hull, hull[1:])
    ]


def _taylor_shift(a, m):
    """Coefficients of Q(xi + m) given those of Q(xi)."""
    d = len(a) - 1
    powers = [m.one()]
    for _ in range(d):
        powers.append(powers[-1] * m)
    out = []
    for j in range(d + 1):
        acc = m.zero()
        for i in range(j, d + 1):
            if not a[i].is_zero():
                acc = acc + a[i] * powers[i - j].scale(comb(i, j))
        out.append(acc)
    return out


def default_target(P):
    edges = newton_edges(P.ascending())
    gamma_min = min((e[4] for e in edges), default=Fraction(0))
    return 2 + max(Fraction(0), -gamma_min) * P.degree


class _Expansion:
    def __init__(self, base, E0, target, max_steps):
        self.base = base
        self.E0 = E0
        self.target = target
        self.max_steps = max_steps
        self.steps = 0
        self.branches = []

    def tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise ResourceError(f"Newton-Puiseux step budget of {self.max_steps} exceeded")

    def emit(self, series, E, guaranteed):
        self.branches.append(
            PuiseuxBranch(series, E, E // self.E0, guaranteed, self.E0)
        )

    def run(self, a, E, prefix, floor):
        while True:
            r0 = next(i for i, c in enumerate(a) if not c.is_zero())
            if r0 >= 2:
                raise DomainError("repeated branch: pass the squarefree part")
            if r0 == 1:
                self.emit(prefix, E, INF)
            edges = [e for e in newton_edges(a) if floor is None or e[4] > floor]
            if not edges:
                return
            if r0 == 0 and len(edges) == 1 and edges[0][2] - edges[0][0] == 1:
                gamma = edges[0][4]
                if a[0].valuation() >= self.target and gamma >= -1:
                    self.emit(prefix, E, gamma)
                    return
                c = -a[0].leading_coefficient() / a[1].leading_coefficient()
                term = _mono(gamma, c, self.base)
                self.tick()
                a = _taylor_shift(a, term)
                prefix = prefix + term
                floor = gamma
                continue
            for i0, v0, i1, v1, gamma in edges:
                self._edge(a, E, prefix, i0, i1, v0, gamma)
            return

    def _edge(self, a, E, prefix, i0, i1, v0, gamma):
        q = (gamma * E).denominator
        level = v0 + i0 * gamma
        psi = [Fraction(0)] * ((i1 - i0) // q + 1)
        for i in range(i0, i1 + 1):
            c = a[i]
            if c.is_zero():
                continue
            v = c.valuation()
            if v + i * gamma == level:
                psi[(i - i0) // q] = c.leading_coefficient()
        psi = upoly.normalize(psi)
        roots = upoly.rational_roots(psi)
        if sum(m for _, m in roots) != upoly.degree(psi):
            raise DomainError(
                f"edge of slope {-gamma} needs an irrational root of {list(map(str, psi))}"
            )
        for u, _mult in roots:
            c = upoly.exact_root(u, q)
            if c is None:
                raise DomainError(f"coefficient {u}^(1/{q}) is irrational")
            term = _mono(gamma, c, self.base)
            self.tick()
            self.run(_taylor_shift(a, term), E * q, prefix + term, gamma)


def newton_puiseux(P, target_valuation=None, max_steps=5000):
    """Branches of P with residual valuation val(P(branch)) >= target_valuation.

    Conjugate branches are returned once, with ``multiplicity`` counting them.
    """
    target = default_target(P) if target_valuation is None else Fraction(target_valuation)
    if resultant_with_derivative(P).is_zero():
        raise DomainError("repeated branch: pass the squarefree part")
    E0 = P.ramification
    exp = _Expansion(P.base, E0, target, max_steps)
    exp.run(P.ascending(), E0, _const(0, P.base), None)
    return exp.branches


def residual(P, branch):
    return P(branch.series)


# -- logarithmic tests and pole order ----------------------------------------------

def is_logarithmic(P):
    """val(c_j) >= -j for all j, read off the coefficients."""
    return all(c.is_zero() or c.valuation() >= -j for j, c in enumerate(P.coefficients, 1))


def pole_order(P):
    """Least N >= 0 with every branch of valuation >= -N-1."""
    worst = max(
        (Fraction(-c.valuation()) / j for j, c in enumerate(P.coefficients, 1) if not c.is_zero()),
        default=Fraction(0),
    )
    return max(0, math.ceil(worst - 1))


# -- kappa shifts ------------------------------------------------------------

def kappa_shift(P, a):
    """Replace xi by xi + da/dz for a polar class a."""
    if a.variables != (P.base,):
        raise DomainError(f"irregular value must be a polynomial in {P.base}")
    if polar_class(a) != a:
        raise DomainError("kappa_shift needs a polar class (negative exponents only)")
    g = derivative(a)
    return PlaneCover.from_ascending(_taylor_shift(P.ascending(), g), P.base, P.fiber)


def kappa_shift_form(P, omega):
    """Shift by the exact form omega = f dz; a z^-1 dz term is not exact."""
    return kappa_shift(P, integrate_polar(omega, frame="dz"))


def branch_value(series):
    """The irregular value whose differential is the sub-logarithmic part of series*dz."""
    return integrate_polar(series.filter(lambda k: k[0] < -1), frame="dz")


# -- irregular values and components ----------------------------------------------

@dataclass(frozen=True)
class CoverIrregularity:
    values: IrregularValueSet
    branch_values: tuple           # value of each branch (same order as the branches)
    galois_complete: bool          # False if some conjugate value is not representable over Q
    branches: tuple


def _value_orbit(branch, a):
    """(turn, conjugate value) over coset representatives of the stabilizer of a.

    The conjugate is None when its coefficients would leave Q.
    """
    L = lcm(branch.base_ramification, a.ramification)
    out = []
    for t in range(0, L, branch.base_ramification):
        try:
            out.append((t, _conjugate(a, t)))
        except DomainError:
            out.append((t, None))
    return out


def _conjugate(f, t):
    terms = {}
    for (x,), c in f.items():
        m = galois_multiplier(t, x)
        if m is None:
            raise DomainError("conjugate not representable over Q")
        terms[(x,)] = c * m
    return LaurentPuiseuxPoly(terms, f.variables, f.ndiv)


def irregular_values(P, target_valuation=None, branches=None):
    """Irregular values of the branches, closed under the Galois action where Q allows."""
    if branches is None:
        branches = newton_puiseux(P, target_valuation)
    vals = []
    branch_vals = []
    complete = True
    for b in branches:
        a = branch_value(b.series)
        branch_vals.append(a)
        for _t, conj in _value_orbit(b, a):
            if conj is None:
                complete = False
            else:
                vals.append(conj)
    values = IrregularValueSet.from_values(vals, (P.base,), 1)
    return CoverIrregularity(values, tuple(branch_vals), complete, tuple(branches))


def _power_sums(series, k_max, step, count):
    """Sum over j < count of (sigma_{step*j} series)^k, for k = 1..k_max."""
    out = []
    power = series.one()
    for _ in range(k_max):
        power = power * series
        kept = power.filter(lambda k: (step * k[0]).denominator == 1)
        out.append(kept.scale(count))
    return out


def _from_power_sums(p, base):
    """Monic polynomial coefficients c_1..c_n from power sums p_1..p_n (Newton's identities)."""
    e = [_const(1, base)]
    for k in range(1, len(p) + 1):
        acc = _const(0, base)
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc.scale(Fraction(1, k)))
    return tuple(e[k] if k % 2 == 0 else -e[k] for k in range(1, len(p) + 1))


def _precision_bounds(roots, n):
    """For each k, a valuation below which e_k of the truncations equals e_k of the true roots.

    ``roots`` lists (valuation lower bound, guaranteed error valuation) per root.
    """
    bounds = []
    for k in range(1, n + 1):
        best = INF
        for T in combinations(range(len(roots)), k):
            total_v = sum(roots[i][0] for i in T)
            for i in T:
                g = roots[i][1]
                if g == INF:
                    continue
                best = min(best, total_v - roots[i][0] + g)
        bounds.append(best)
    return bounds


def _roots_of(branches):
    roots = []
    for b in branches:
        roots.extend([(b.valuation, b.guaranteed_valuation)] * b.multiplicity)
    return roots


def section_roundtrip(branches, base="z", fiber="xi", min_precision=None, with_bounds=False):
    """Rebuild the monic polynomial from branches via elementary symmetric functions.

    Coefficient c_k is exact below ``bounds[k-1]`` and truncated there.  If
    ``min_precision`` is given, every bound must reach it.  With
    ``with_bounds`` the bounds are returned too.
    """
    branches = list(branches)
    n = sum(b.multiplicity for b in branches)
    if n == 0:
        raise DomainError("no branches")
    p = [_const(0, base) for _ in range(n)]
    for b in branches:
        for k, s in enumerate(_power_sums(b.series, n, b.base_ramification, b.multiplicity)):
            p[k] = p[k] + s
    bounds = _precision_bounds(_roots_of(branches), n)
    if min_precision is not None and any(bnd < min_precision for bnd in bounds):
        raise ResourceError(
            f"precision shortfall: coefficient bounds {bounds} below {min_precision}"
        )
    cover = PlaneCover(_from_power_sums(p, base), base, fiber).truncated(bounds)
    return (cover, bounds) if with_bounds else cover


def components(P, target_valuation=None, branches=None):
    """Factor of P belonging to each representable irregular value.

    Returns ``{value: (cover, bounds)}``.  The cover is the exact product of
    (xi - r) over the truncated roots r whose value is ``value``, so its
    coefficients may be ramified; it agrees with the true factor of P below
    ``bounds``.
    """
    irr = irregular_values(P, target_valuation, branches)
    groups = {}
    for b, a in zip(irr.branches, irr.branch_values):
        L = lcm(b.base_ramification, a.ramification)
        for t, conj in _value_orbit(b, a):
            if conj is not None:
                groups.setdefault(conj, []).append((b, L, t))
    out = {}
    for a, members in groups.items():
        roots = []
        for b, L, _t in members:
            roots.extend([(b.valuation, b.guaranteed_valuation)] * (b.ramification // L))
        n = len(roots)
        p = [_const(0, P.base) for _ in range(n)]
        for b, L, t in members:
            for k, s in enumerate(_power_sums(b.series, n, L, b.ramification // L)):
                p[k] = p[k] + _conjugate(s, t)
        cover = PlaneCover(_from_power_sums(p, P.base), P.base, P.fiber)
        out[a] = (cover, _precision_bounds(roots, n))
    return out


def shift_branch(branch, a):
    """Branch of kappa_shift(P, a) corresponding to ``branch``."""
    new = branch.series - derivative(a)
    return PuiseuxBranch(new, branch.ramification, branch.multiplicity,
                         branch.guaranteed_valuation, branch.base_ramification)


# -- resultants and fibers ------------------------------------------------------------

def _det_bareiss(M):
    """Fraction-free determinant over Q[z^(+-1/e)]."""
    M = [row[:] for row in M]
    n = len(M)
    if n == 0:
        return None
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return M[0][0].zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else exact_div(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f, g, base="z"):
    """Res(f, g) for polynomials given by ascending coefficient lists."""
    m, n = len(f) - 1, len(g) - 1
    zero = _const(0, base)
    size = m + n
    if size == 0:
        return _const(1, base)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _det_bareiss(rows)


def resultant_with_derivative(P):
    """Res(P, dP/dxi); nonzero iff P is squarefree over the Puiseux field."""
    a = P.ascending()
    da = [a[i].scale(i) for i in range(1, len(a))]
    if len(da) == 1:
        return da[0]
    return resultant(a, da, P.base)


def discriminant(P):
    d = P.degree
    r = resultant_with_derivative(P)
    return r if (d * (d - 1) // 2) % 2 == 0 else -r


def _partition_from_sqf(factors):
    parts = []
    for mult, f in enumerate(factors, 1):
        parts.extend([mult] * upoly.degree(f))
    return Partition(tuple(parts))


def fiber_partition(P, z0):
    """Multiplicity partition of the roots of P(z0, xi), via squarefree decomposition."""
    z0 = Fraction(z0)
    if z0 == 0:
        raise DomainError("base point on H")
    coeffs = upoly.normalize([c.evaluate({P.base: z0}) for c in P.ascending()])
    return _partition_from_sqf(upoly.squarefree_decomposition(coeffs))


def generic_fiber_partition(P):
    """Partition over the generic point, and Res(P, dP/dxi)."""
    res = resultant_with_derivative(P)
    if not res.is_zero():
        return Partition((1,) * P.degree), res
    import sympy

    E = P.ramification
    t, x = sympy.symbols("t xi")
    low = min(int(m * E) for c in P.ascending() for (m,), _ in c.items())
    expr = sympy.Integer(0)
    for i, c in enumerate(P.ascending()):
        for (m,), v in c.items():
            expr += sympy.Rational(v.numerator, v.denominator) * t ** (int(m * E) - low) * x ** i
    _, factors = sympy.sqf_list(sympy.Poly(expr, x, t))
    parts = []
    for f, mult in factors:
        parts.extend([mult] * f.degree(x))
    return Partition(tuple(parts)), res


__all__ = [
    "PlaneCover", "PuiseuxBranch", "newton_edges", "newton_puiseux", "default_target", "residual",
    "is_logarithmic", "pole_order", "kappa_shift", "kappa_shift_form", "branch_value",
    "CoverIrregularity", "irregular_values", "section_roundtrip", "components", "shift_branch",
    "resultant", "resultant_with_derivative", "discriminant", "fiber_partition",
    "generic_fiber_partition", "INF",
]
