"""Seeded generators for the property suites and the CLI fixture batch.

Every generator takes a :class:`random.Random` so a single seed pins the
whole batch.  Covers are built from rational branch data (unramified roots
and full Galois orbits of ramified ones), so Newton-Puiseux never needs an
irrational root on them.
"""
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import LaurentPuiseuxPoly
from .connections import Block, GoodModel1D
from .covers import INF, PuiseuxBranch, newton_puiseux, resultant_with_derivative, section_roundtrip
from .errors import DomainError
from .invariants import ParabolicBundleData, SurfaceLatticeData


@dataclass(frozen=True)
class CoverSuiteConfig:
    count: int = 100
    max_degree: int = 4
    min_exponent: int = -3      # most polar leading exponent (times the ramification)
    max_extra_terms: int = 2
    perturb: bool = True        # add a high-order term so roots become infinite series


def _nonzero(rng, lo=-3, hi=3):
    return rng.choice([x for x in range(lo, hi + 1) if x])


def _branch_data(rng, e, cfg):
    """A root series in z^(1/e) whose leading exponent has denominator exactly e."""
    lead = rng.choice([p for p in range(cfg.min_exponent * e, e + 1) if math.gcd(p, e) == 1])
    terms = {(Fraction(lead, e),): Fraction(_nonzero(rng))}
    step = lead
    for _ in range(rng.randint(0, cfg.max_extra_terms)):
        step += rng.randint(1, e + 1)
        terms[(Fraction(step, e),)] = Fraction(_nonzero(rng), rng.choice([1, 1, 2]))
    return LaurentPuiseuxPoly(terms, ("z",), 1)


def _ramification_split(rng, d):
    out = []
    while d:
        e = rng.choice([k for k in (1, 1, 2, 3, 4) if k <= d])
        out.append(e)
        d -= e
    return out


def random_cover(rng, cfg=CoverSuiteConfig()):
    """A squarefree cover of degree <= cfg.max_degree on which expansion stays rational."""
    while True:
        d = rng.randint(1, cfg.max_degree)
        branches = [
            PuiseuxBranch(_branch_data(rng, e, cfg), e, e, INF, 1)
            for e in _ramification_split(rng, d)
        ]
        P = section_roundtrip(branches)
        if cfg.perturb and rng.random() < 0.5:
            top = max(b.series.max_exponent() for b in branches)
            bump = LaurentPuiseuxPoly({(Fraction(math.floor(d * top) + rng.randint(1, 3)),): Fraction(_nonzero(rng))})
            P = type(P)(P.coefficients[:-1] + (P.coefficients[-1] + bump,), P.base, P.fiber)
        if resultant_with_derivative(P).is_zero():
            continue
        try:
            newton_puiseux(P)
        except DomainError:
            continue
        return P


def cover_suite(seed=0, cfg=CoverSuiteConfig()):
    rng = random.Random(seed)
    return [random_cover(rng, cfg) for _ in range(cfg.count)]


# -- formal models ---------------------------------------------------------------

def random_residue(rng, max_den=6, span=3):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * den, span * den), den)


def random_model(rng, max_blocks=3, max_rank=2):
    values = [LaurentPuiseuxPoly({}, ("z",), 1)]
    for _ in range(rng.randint(0, max_blocks - 1)):
        terms = {(Fraction(-k),): Fraction(_nonzero(rng)) for k in rng.sample(range(1, 4), rng.randint(1, 2))}
        v = LaurentPuiseuxPoly(terms, ("z",), 1)
        if v not in values:
            values.append(v)
    if rng.random() < 0.5:
        values = values[1:] or values
    blocks = []
    for v in values:
        res = [(random_residue(rng), 1) for _ in range(rng.randint(1, max_rank))]
        blocks.append(Block(v, tuple(res)))
    return GoodModel1D(tuple(blocks))


def random_rank1_model(rng):
    return GoodModel1D((Block(LaurentPuiseuxPoly({}, ("z",), 1), ((random_residue(rng), 1),)),))


# -- parabolic data ----------------------------------------------------------------

def random_level(rng, max_den=4):
    den = rng.randint(1, max_den)
    return Fraction(-rng.randint(0, den - 1), den)


def random_parabolic(rng, max_rank=3, max_points=3):
    rank = rng.randint(1, max_rank)
    points = []
    for p in range(rng.randint(0, max_points)):
        left, jumps = rank, []
        while left:
            r = rng.randint(1, left)
            jumps.append((random_level(rng), r))
            left -= r
        points.append((f"p{p}", tuple(jumps)))
    return ParabolicBundleData(rng.randint(-5, 5), rank, tuple(points))


def random_cover_profile(rng, d, max_e=4):
    """Ramification indices (each <= max_e) of the preimages of one point, summing to d."""
    out = []
    left = d
    while left:
        e = rng.randint(1, min(left, max_e))
        out.append(e)
        left -= e
    return out


def random_pullback_case(rng, max_e=4):
    d = random_parabolic(rng)
    degree = rng.randint(1, max_e)
    cover = {label: random_cover_profile(rng, degree, max_e) for label, _ in d.points if rng.random() < 0.8}
    return d, cover, degree


def random_flat_rank1(rng, max_points=4):
    """Residues at points of P^1 summing to zero."""
    n = rng.randint(1, max_points)
    res = [random_residue(rng) for _ in range(n - 1)]
    res.append(-sum(res, Fraction(0)))
    return {f"p{i}": a for i, a in enumerate(res)}


# -- surfaces: direct sums of rank-1 DM data on P^2 -----------------------------------

@dataclass(frozen=True)
class Rank1Piece:
    levels: tuple              # a_{p,i} on each curve
    k: int                     # c1 = k [line]


@dataclass(frozen=True)
class DirectSumFixture:
    degrees: tuple             # degrees of the boundary curves in P^2
    pieces: tuple

    @property
    def rank(self):
        return len(self.pieces)

    def line_bundle_c1(self):
        return sum(p.k for p in self.pieces)

    def line_bundle_ch2(self):
        return sum(Fraction(p.k * p.k, 2) for p in self.pieces)

    def line_bundle_c2(self):
        return sum(p.k * r.k for p, r in combinations(self.pieces, 2))

    def surface_data(self):
        degs = self.degrees
        n = len(degs)
        graded = []
        for i in range(n):
            by_level = {}
            for p in self.pieces:
                r, dg = by_level.get(p.levels[i], (0, 0))
                by_level[p.levels[i]] = (r + 1, dg + p.k * degs[i])
            graded.append(tuple((a, r, Fraction(dg)) for a, (r, dg) in by_level.items()))
        crossings = []
        for i, j in combinations(range(n), 2):
            ranks = {}
            for p in self.pieces:
                key = (p.levels[i], p.levels[j])
                ranks[key] = ranks.get(key, 0) + 1
            for t in range(degs[i] * degs[j]):
                crossings.append((i, j, f"x{i}{j}.{t}", tuple(ranks.items())))
        return SurfaceLatticeData(
            self.rank,
            tuple((f"H{i}", d * d, d) for i, d in enumerate(degs)),
            tuple(tuple(di * dj for dj in degs) for di in degs),
            tuple(graded),
            tuple(crossings),
        )


def _last_level(rng, partial, d):
    """a in (-1, 0] with d*a + partial an integer."""
    x = (-partial) % 1
    cands = [(x - j) / d for j in range(0, d + 1)]
    cands = [a for a in cands if Fraction(-1) < a <= 0 and ((d * a + partial).denominator == 1)]
    return rng.choice(cands)


def random_direct_sum(rng, max_curves=3, max_degree=3, max_rank=3):
    degs = tuple(rng.randint(1, max_degree) for _ in range(rng.randint(1, max_curves)))
    pieces = []
    for _ in range(rng.randint(1, max_rank)):
        levels = [random_level(rng, 6) for _ in degs[:-1]]
        partial = sum((d * a for d, a in zip(degs, levels)), Fraction(0))
        levels.append(_last_level(rng, partial, degs[-1]))
        k = sum(d * a for d, a in zip(degs, levels))
        pieces.append(Rank1Piece(tuple(levels), int(k)))
    return DirectSumFixture(degs, tuple(pieces))


# -- slope tables ---------------------------------------------------------------------

def random_graded_table(rng, max_len=6):
    return [(rng.randint(1, 4), Fraction(rng.randint(-20, 20), rng.randint(1, 3)))
            for _ in range(rng.randint(1, max_len))]


# -- CLI batch -----------------------------------------------------------------------

def fixture_batch(seed=0, covers=12, models=12, parabolic=12, surfaces=6):
    """A batch of CLI jobs touching every command, fully determined by ``seed``."""
    from . import serialize as S

    rng = random.Random(seed)
    jobs = []

    def add(command, payload):
        jobs.append({"id": f"{command}-{len(jobs):03d}", "command": command, "payload": payload})

    add("good-check", {"divisors": ["z1", "z2"], "values": ["z1^-1*z2^-1", "z1^-1", "0"]})
    add("good-check", {"divisors": ["z1", "z2"], "values": ["z1^-1", "z2^-1", "0"]})
    add("bad-locus", {"divisors": ["x"], "tame": ["y"], "values": ["x^-1", "y*x^-1"]})
    add("pullback", {"divisors": ["z1", "z2"], "values": ["z1^-1", "z1^-1*z2^-1", "0"],
                     "substitution": {"z1": {"w1": 2, "w2": 1}, "z2": {"w2": 1}}})
    for r in range(2, 5):
        entries = [[str(rng.randint(0, 2)), str(rng.randint(0, 2))] for _ in range(r)]
        add("partition", {"point": entries})
        add("chow", {"point": entries})
    add("strata", {"partition": [2, 1], "direction": "above"})
    add("strata", {"partition": [2, 2], "direction": "below"})
    add("cc", {"cycle": {"L1": 1, "L2": 2}, "bound": {"L1": 1, "L2": 3}})
    add("ordered-partitions", {"cycle": {"L1": 1, "L2": 2}})
    cfg = CoverSuiteConfig(count=covers)
    for _ in range(covers):
        P = random_cover(rng, cfg)
        add("puiseux", S.encode_cover(P))
        add("cover", dict(S.encode_cover(P), fiber_at=str(rng.choice([1, 2, -1, 3]))))
    add("kappa", {"cover": {"coefficients": ["0", "-z^-4"]}, "a": "-z^-1"})
    for _ in range(models):
        m = random_model(rng)
        add("dm", {"model": S.encode_model(m), "c": S.q(random_level(rng))})
        add("classify", {"model": S.encode_model(m)})
    for _ in range(parabolic):
        d, cover, degree = random_pullback_case(rng)
        add("parabolic", dict(S.encode_parabolic(d), cover={"degree": degree, "profile": cover}))
    for _ in range(surfaces):
        add("surface", S.encode_surface(random_direct_sum(rng).surface_data()))
    add("hilbert", {"n": 2, "polynomial": ["0", "1", "1"]})
    add("slope", {"M2": "3", "N": 1, "deg_omega_H": "2", "rank": 2, "mu": "0"})
    add("chain", {"slopes": ["3", "2", "1", "0"], "edges": [[0, 2], [1, 3]]})
    add("chain", {"slopes": ["2", "1", "0"], "edges": [[0, 1]]})
    return jobs


__all__ = [
    "CoverSuiteConfig", "random_cover", "cover_suite", "random_residue", "random_model",
    "random_rank1_model", "random_level", "random_parabolic", "random_cover_profile",
    "random_pullback_case", "random_flat_rank1", "Rank1Piece", "DirectSumFixture",
    "random_direct_sum", "random_graded_table", "fixture_batch",
]
