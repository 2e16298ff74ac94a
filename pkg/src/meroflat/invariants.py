"""Numerical invariants: parabolic degrees, graded degrees, surface Chern bookkeeping,
Hilbert coefficients and slope bounds.

Jump levels a lie in (-1, 0].  Every jump mass is listed, including a = 0.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from . import upoly
from .algebra import rational
from .connections import dm_shift
from .errors import DomainError


def _in_window(a):
    return Fraction(-1) < a <= 0


def _jumps(jumps, rank=None):
    merged = {}
    for a, r in jumps:
        a, r = rational(a), int(r)
        if not _in_window(a):
            raise DomainError(f"jump level {a} outside (-1, 0]")
        if r < 1:
            raise DomainError(f"jump rank must be >= 1, got {r}")
        merged[a] = merged.get(a, 0) + r
    out = tuple(sorted(merged.items(), reverse=True))
    if rank is not None and sum(r for _, r in out) != rank:
        raise DomainError(f"jump ranks sum to {sum(r for _, r in out)}, expected rank {rank}")
    return out


# -- curves ----------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicBundleData:
    deg_P0: int
    rank: int
    points: tuple              # (label, ((a, rank_a), ...)) with levels decreasing

    def __post_init__(self):
        if int(self.rank) < 1:
            raise DomainError("rank must be >= 1")
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "deg_P0", int(self.deg_P0))
        pts = self.points.items() if isinstance(self.points, dict) else self.points
        seen = set()
        clean = []
        for label, jumps in pts:
            if label in seen:
                raise DomainError(f"point {label!r} listed twice")
            seen.add(label)
            clean.append((str(label), _jumps(jumps, self.rank)))
        object.__setattr__(self, "points", tuple(clean))


def parabolic_degree(d):
    """deg(P0) - sum over points and levels of a * rank_a."""
    return d.deg_P0 - sum(a * r for _, jumps in d.points for a, r in jumps)


def pullback_parabolic(d, cover, degree):
    """Pull back along a degree-``degree`` cover of curves.

    ``cover`` maps a point label to the ramification indices of its
    preimages (summing to ``degree``); unlisted points have ``degree``
    unramified preimages.  A jump a over a preimage of index e becomes
    e*a = a' + s with a' in (-1, 0]; the integer s moves into deg(P0).
    """
    degree = int(degree)
    if degree < 1:
        raise DomainError("cover degree must be >= 1")
    cover = {str(k): [int(e) for e in v] for k, v in dict(cover).items()}
    labels = {label for label, _ in d.points}
    for x, profile in cover.items():
        if any(e < 1 for e in profile) or sum(profile) != degree:
            raise DomainError(f"inconsistent ramification profile at {x}: {profile} for degree {degree}")
        if x not in labels:
            raise DomainError(f"ramification given at {x!r}, which carries no jump data")
    deg = degree * d.deg_P0
    points = []
    for label, jumps in d.points:
        for j, e in enumerate(cover.get(label, [1] * degree)):
            new = []
            for a, r in jumps:
                s = math.ceil(e * a)
                deg -= s * r
                new.append((e * a - s, r))
            points.append((f"{label}.{j}", tuple(new)))
    return ParabolicBundleData(deg, d.rank, tuple(points))


def flat_rank1_parabolic(residues, c=0):
    """DM filtered bundle of a rank-1 flat connection on P^1 with the given residues.

    ``residues`` maps points to eigenvalues summing to 0.  The lattice at p
    is generated by z_p^(-n_p) v with n_p the DM shift, so deg P0 = sum n_p.
    """
    residues = {str(p): rational(a) for p, a in dict(residues).items()}
    if sum(residues.values()) != 0:
        raise DomainError("residues of a flat rank-1 connection on P^1 sum to 0")
    if rational(c) != 0:
        raise DomainError("only the window (-1, 0] is supported")
    deg = 0
    points = []
    for p, alpha in residues.items():
        n = dm_shift(alpha, 0)
        deg += n
        points.append((p, ((n - alpha, 1),)))
    return ParabolicBundleData(deg, 1, tuple(points))


def graded_degree(a, deg_N, rank_a):
    return rational(a) * deg_N * rank_a


def equivariant_graded_degree(a, deg_N, rank, m, ell):
    """Degree of Gr_a through the m-fold cover: b = (a - ell)/m on N' = N^m, plus ell*deg_N*rank."""
    m, ell = int(m), int(ell)
    if not 0 <= ell < m:
        raise DomainError(f"need 0 <= ell < m, got ell={ell}, m={m}")
    a = rational(a)
    b = (a - ell) / m
    deg_N_prime = m * deg_N
    return b * deg_N_prime * rank + ell * deg_N * rank


# -- surfaces ----------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceLatticeData:
    """Boundary data of a DM-filtered bundle on a surface.

    ``graded[i]`` lists (a, rank_a, deg_a) on divisor i, where deg_a is the
    plain degree of Gr_a(P0) on H_i.  Each crossing is one intersection
    point (i, j, label, {(a_i, a_j): rank}), listed once.
    """

    rank: int
    divisors: tuple            # (label, self-intersection, omega-degree)
    intersection: tuple        # symmetric matrix
    graded: tuple
    crossings: tuple = ()

    def __post_init__(self):
        rank = int(self.rank)
        object.__setattr__(self, "rank", rank)
        divs = tuple((str(l), rational(s), rational(w)) for l, s, w in self.divisors)
        object.__setattr__(self, "divisors", divs)
        mat = tuple(tuple(rational(x) for x in row) for row in self.intersection)
        n = len(divs)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise DomainError("intersection matrix has the wrong shape")
        for i in range(n):
            if mat[i][i] != divs[i][1]:
                raise DomainError(f"diagonal entry {i} differs from the self-intersection")
            for j in range(n):
                if mat[i][j] != mat[j][i]:
                    raise DomainError("intersection matrix is not symmetric")
        object.__setattr__(self, "intersection", mat)
        graded = []
        for i, rows in enumerate(self.graded):
            rows = tuple((rational(a), int(r), rational(dg)) for a, r, dg in rows)
            _jumps([(a, r) for a, r, _ in rows], rank)
            graded.append(tuple(sorted(rows, reverse=True)))
        if len(graded) != n:
            raise DomainError("one graded list per divisor is required")
        object.__setattr__(self, "graded", tuple(graded))
        crossings = []
        for i, j, label, ranks in self.crossings:
            i, j = int(i), int(j)
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"bad crossing divisors ({i}, {j})")
            items = ranks.items() if isinstance(ranks, dict) else ranks
            ranks = tuple(sorted(((rational(a), rational(b)), int(r)) for (a, b), r in items))
            if sum(r for _, r in ranks) != rank:
                raise DomainError(f"bigraded ranks at crossing {label} do not sum to the rank")
            crossings.append((i, j, str(label), ranks))
        object.__setattr__(self, "crossings", tuple(crossings))

    def crossing_correction(self, i, a):
        """Sum over crossings on H_i of b * rank_(a, b), b the level on the other divisor."""
        total = Fraction(0)
        for ci, cj, _, ranks in self.crossings:
            for (x, y), r in ranks:
                if ci == i and x == a:
                    total += y * r
                elif cj == i and y == a:
                    total += x * r
        return total


def c1_coefficients(d):
    """alpha_i = -sum_a a * rank_a on each divisor."""
    return tuple(-sum(a * r for a, r, _ in rows) for rows in d.graded)


def c1_box_check(d):
    coeffs = c1_coefficients(d)
    return coeffs, all(0 <= x < d.rank for x in coeffs)


def C1(d):
    return d.rank * max((abs(s) for _, s, _ in d.divisors), default=Fraction(0)) + 1


@dataclass(frozen=True)
class DegreeCheck:
    ok: bool
    bound: Fraction
    diagnostics: tuple


def c1_bound_check(d):
    """Each filtered degree of Gr_a on H_i equals a*[H_i]^2*rank_a and stays below C1.

    The filtered degree is deg_a minus the crossing correction; with no
    crossings it is deg_a itself.
    """
    bound = C1(d)
    problems = []
    for i, rows in enumerate(d.graded):
        h2 = d.divisors[i][1]
        for a, r, dg in rows:
            filtered = dg - d.crossing_correction(i, a)
            expected = a * h2 * r
            if filtered != expected:
                problems.append(f"divisor {d.divisors[i][0]}, level {a}: degree {filtered} != a*H^2*rank_a = {expected}")
            elif not abs(filtered) < bound:
                problems.append(f"divisor {d.divisors[i][0]}, level {a}: |{filtered}| >= C1 = {bound}")
    return DegreeCheck(not problems, bound, tuple(problems))


def C2(d):
    r = d.rank
    n = len(d.divisors)
    self_sum = sum(abs(d.intersection[i][i]) for i in range(n))
    cross_sum = sum(abs(d.intersection[i][j]) for i in range(n) for j in range(n) if i != j)
    return Fraction(r, 2) * self_sum + Fraction(r, 2) * cross_sum + r * self_sum + 1


def ch2_boundary_terms(d):
    """sum a*deg_a - 1/2 sum a^2 rank_a [H_i]^2 - sum over crossing points a_i a_j rank."""
    total = Fraction(0)
    for i, rows in enumerate(d.graded):
        h2 = d.divisors[i][1]
        for a, r, dg in rows:
            total += a * dg - Fraction(1, 2) * a * a * r * h2
    for _, _, _, ranks in d.crossings:
        for (x, y), r in ranks:
            total -= x * y * r
    return total


def c1_squared(d):
    coeffs = c1_coefficients(d)
    n = len(coeffs)
    return sum(coeffs[i] * coeffs[j] * d.intersection[i][j] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class ChernResult:
    ch2: Fraction
    c2: Fraction
    within_C2: bool
    bound: Fraction


def ch2_c2(d):
    """ch2 and c2 of P0 for a DM-filtered bundle whose filtered ch2 vanishes."""
    ch2 = ch2_boundary_terms(d)
    c2 = (c1_squared(d) - 2 * ch2) / 2
    bound = C2(d)
    return ChernResult(ch2, c2, abs(c2) <= bound, bound)


def ch2_balance(d, ch2_P0):
    """Filtered ch2 from an independently known ch2(P0); zero for DM data of a flat bundle."""
    return rational(ch2_P0) - ch2_boundary_terms(d)


def surface_hrr(rank, c1_dot_K, c1_dot_omega, ch2, omega_sq, omega_dot_K, chi_O):
    """chi(F(m)) on a surface by Hirzebruch-Riemann-Roch, as ascending coefficients in m.

    chi(F(m)) = r chi(O) - (c1.K)/2 + ch2 + m (c1.w - r (w.K)/2) + r m^2 w^2/2.
    """
    r = Fraction(rank)
    const = r * chi_O - Fraction(c1_dot_K) / 2 + rational(ch2)
    lin = rational(c1_dot_omega) - r * Fraction(omega_dot_K) / 2
    quad = r * Fraction(omega_sq) / 2
    return upoly.normalize([const, lin, quad])


# -- Hilbert polynomials ------------------------------------------------------

@dataclass(frozen=True)
class HilbertData:
    n: int
    coefficients: tuple        # a_0 .. a_n


def _binom_poly(n, k):
    """binom(m + n - 1, k) as ascending coefficients in m."""
    poly = [Fraction(1)]
    for j in range(k):
        poly = upoly.mul(poly, [Fraction(n - 1 - j), Fraction(1)])
    return upoly.scale(poly, Fraction(1, math.factorial(k)))


def hilbert_coeffs(poly, n=None):
    """Coefficients a_i with P(m) = sum_i a_i binom(m + n - 1, n - i)."""
    poly = upoly.normalize([rational(c) for c in poly])
    deg = upoly.degree(poly)
    n = max(deg, 0) if n is None else int(n)
    if deg > n:
        raise DomainError(f"degree {deg} exceeds n = {n}")
    rest = list(poly)
    coeffs = []
    for i in range(n + 1):
        k = n - i
        basis = _binom_poly(n, k)
        lead = rest[k] if k < len(rest) else Fraction(0)
        a = lead * math.factorial(k)
        coeffs.append(a)
        rest = upoly.sub(rest, upoly.scale(basis, a))
        rest = list(rest) + [Fraction(0)] * (n + 1 - len(rest))
    if any(x.denominator != 1 for x in coeffs):
        raise DomainError("not a Hilbert polynomial")
    return HilbertData(n, tuple(int(x) for x in coeffs))


def hilbert_polynomial(h):
    total = []
    for i, a in enumerate(h.coefficients):
        total = upoly.add(total, upoly.scale(_binom_poly(h.n, h.n - i), a))
    return upoly.normalize(total)


# -- slopes ------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeContext:
    M2: Fraction
    N: int
    deg_omega_H: Fraction
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "M2", rational(self.M2))
        object.__setattr__(self, "deg_omega_H", rational(self.deg_omega_H))
        if self.M2 < 0 or self.deg_omega_H < 0:
            raise DomainError("M2 and deg_omega(H) must be non-negative")
        if int(self.N) < 1:
            raise DomainError("N must be a positive integer")

    @property
    def delta(self):
        return self.M2 + self.N * self.deg_omega_H


def slope_bounds(ctx, mu, spread=None):
    """(mu_max bound, gap bound) with gap = rank (M2 + N deg_omega H)."""
    gap = ctx.rank * ctx.delta
    bound = rational(mu) + gap
    if spread is not None:
        bound += rational(spread)
    return bound, gap


@dataclass(frozen=True)
class ChainCertificate:
    chain: tuple               # ((k, i), ...)
    q: int
    delta: Fraction
    verified_bound: bool


def _admissible_chains(m, edges):
    """All chains 0 = i(0) < ... < i(q) = m with edges (k(p), i(p)) and k(p) <= i(p-1)."""
    out = []

    def rec(last, acc):
        if last == m:
            out.append(tuple(acc))
            return
        for k, i in sorted(edges, key=lambda e: (e[1], e[0])):
            if k <= last < i:
                acc.append((k, i))
                rec(i, acc)
                acc.pop()

    rec(0, [])
    return out


def minimal_chain_exhaustive(m, edges):
    chains = _admissible_chains(m, edges)
    if not chains:
        return None
    return min(chains, key=lambda c: (len(c), [(i, k) for k, i in c]))


def _minimal_chain(m, edges):
    """Shortest chain; among shortest, lexicographically least sequence of (i, k)."""
    dist = {m: 0}
    # distance to m from each endpoint, by backward BFS
    for last in range(m - 1, -1, -1):
        best = None
        for k, i in edges:
            if k <= last < i and i in dist:
                best = dist[i] + 1 if best is None else min(best, dist[i] + 1)
        if best is not None:
            dist[last] = best
    if 0 not in dist:
        return None
    chain = []
    last = 0
    while last != m:
        step = min(
            ((i, k) for k, i in edges if k <= last < i and i in dist and dist[i] == dist[last] - 1),
        )
        chain.append((step[1], step[0]))
        last = step[0]
    return tuple(chain)


def chain_certificate(slopes, edges, delta=None):
    """Irreducibility chain for slopes a_0 > ... > a_m and nonzero maps (k, i).

    Every proper prefix {0..j} needs an edge leaving it.  The chain has the
    fewest steps q; the certificate checks a_k <= a_i + delta along each
    edge used and then a_0 <= a_m + q*delta.  Without ``delta`` the least
    delta compatible with the chain's edges is used.
    """
    slopes = [rational(a) for a in slopes]
    m = len(slopes) - 1
    if m < 1:
        raise DomainError("need at least two slopes")
    if any(x <= y for x, y in zip(slopes, slopes[1:])):
        raise DomainError("slopes must be strictly decreasing")
    edges = sorted({(int(k), int(i)) for k, i in edges})
    for k, i in edges:
        if not 0 <= k < i <= m:
            raise DomainError(f"edge ({k}, {i}) is not of the form k < i <= m")
    for j in range(m):
        if not any(k <= j < i for k, i in edges):
            raise DomainError(f"not irreducible: prefix {{0..{j}}} has no outgoing edge")
    chain = _minimal_chain(m, edges)
    if delta is None:
        delta = max(slopes[k] - slopes[i] for k, i in chain)
    delta = rational(delta)
    edge_ok = all(slopes[k] <= slopes[i] + delta for k, i in chain)
    ok = edge_ok and slopes[0] <= slopes[m] + len(chain) * delta
    return ChainCertificate(chain, len(chain), delta, ok)


def hn_minmax(graded):
    """(min slope, max slope, total slope) of (rank, degree) pieces."""
    graded = [(int(r), rational(dg)) for r, dg in graded]
    if not graded or any(r < 1 for r, _ in graded):
        raise DomainError("need pieces of rank >= 1")
    slopes = [dg / r for r, dg in graded]
    mu = sum(dg for _, dg in graded) / sum(r for r, _ in graded)
    lo, hi = min(slopes), max(slopes)
    assert lo <= mu <= hi
    return lo, hi, mu


__all__ = [
    "ParabolicBundleData", "parabolic_degree", "pullback_parabolic", "flat_rank1_parabolic",
    "graded_degree", "equivariant_graded_degree", "SurfaceLatticeData", "c1_coefficients",
    "c1_box_check", "C1", "DegreeCheck", "c1_bound_check", "C2", "ch2_boundary_terms",
    "c1_squared", "ChernResult", "ch2_c2", "ch2_balance", "surface_hrr", "HilbertData",
    "hilbert_coeffs", "hilbert_polynomial", "SlopeContext", "slope_bounds", "ChainCertificate",
    "minimal_chain_exhaustive", "chain_certificate", "hn_minmax",
]
