"""Formal one-variable good models of meromorphic connections.

A model is a list of blocks (irregular value, residue eigenvalues).  A
lattice is recorded by one shift integer per eigenvalue: shifting the
generator v to z^(-n) v turns the residue alpha into alpha - n and puts the
eigenvalue at level n - alpha of the Deligne-Malgrange filtration.
"""
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPuiseuxPoly, galois_multiplier, polar_class, rational
from .errors import DomainError
from .goodness import IrregularValueSet, is_good_set


def _residue_multiset(residues):
    counts = Counter()
    for alpha, mult in residues:
        mult = int(mult)
        if mult < 1:
            raise DomainError(f"residue multiplicity must be >= 1, got {mult}")
        counts[rational(alpha)] += mult
    return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class Block:
    value: LaurentPuiseuxPoly
    residues: tuple            # sorted (eigenvalue, multiplicity) pairs

    def __post_init__(self):
        if len(self.value.variables) != 1:
            raise DomainError("irregular values of a 1-D model use one variable")
        if polar_class(self.value) != self.value:
            raise DomainError(f"irregular value {self.value} is not a polar class")
        object.__setattr__(self, "residues", _residue_multiset(self.residues))
        if not self.residues:
            raise DomainError("a block needs at least one residue eigenvalue")

    @property
    def rank(self):
        return sum(m for _, m in self.residues)

    @property
    def is_regular(self):
        return self.value.is_zero()


@dataclass(frozen=True)
class GoodModel1D:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise DomainError("a model needs at least one block")
        names = {b.value.variables for b in blocks}
        if len(names) != 1:
            raise DomainError("all irregular values must use the same variable")
        values = [b.value for b in blocks]
        if len(set(values)) != len(values):
            raise DomainError("irregular values of distinct blocks must be distinct")
        if not is_good_set(IrregularValueSet.from_values(values)).good:
            raise DomainError("irregular values do not form a good set")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *pairs):
        """From (value, [(eigenvalue, multiplicity), ...]) pairs."""
        return cls(tuple(Block(v, tuple(r)) for v, r in pairs))

    @property
    def rank(self):
        return sum(b.rank for b in self.blocks)

    @property
    def variable(self):
        return self.blocks[0].value.variables[0]

    def canonical(self):
        """Blocks sorted by irregular value, for comparisons up to reordering."""
        key = lambda b: tuple(sorted(b.value.items()))
        return GoodModel1D(tuple(sorted(self.blocks, key=key)))


@dataclass(frozen=True)
class LatticeSpec:
    model: GoodModel1D
    shifts: tuple              # sorted ((block index, eigenvalue), n)

    def __post_init__(self):
        shifts = self.shifts.items() if isinstance(self.shifts, dict) else self.shifts
        shifts = tuple(sorted(((int(i), rational(a)), int(n)) for (i, a), n in shifts))
        object.__setattr__(self, "shifts", shifts)
        table = dict(shifts)
        for i, b in enumerate(self.model.blocks):
            for alpha, _ in b.residues:
                if (i, alpha) not in table:
                    raise DomainError(f"no shift for eigenvalue {alpha} of block {i}")

    def shift(self, block, alpha):
        return dict(self.shifts)[(block, rational(alpha))]


@dataclass(frozen=True)
class GradedTable:
    """Levels in decreasing order: (level, rank, ((shifted eigenvalue, mult), ...))."""

    entries: tuple
    window: tuple              # (c - 1, c)
    warnings: tuple = ()

    def as_dict(self):
        return {a: (r, dict(ev)) for a, r, ev in self.entries}

    @property
    def rank(self):
        return sum(r for _, r, _ in self.entries)

    @property
    def levels(self):
        return [a for a, _, _ in self.entries]


def dm_shift(alpha, c=0):
    """The integer n with -alpha + n in (c - 1, c]."""
    return math.floor(rational(c) + rational(alpha))


def window_shifts(alpha, c=0, radius=3):
    """All n near the DM shift with -alpha + n in (c - 1, c], by direct search."""
    alpha, c = rational(alpha), rational(c)
    centre = math.floor(c + alpha)
    return [n for n in range(centre - radius, centre + radius + 1) if c - 1 < n - alpha <= c]


def dm_lattice(model, c=0):
    c = rational(c)
    return LatticeSpec(
        model,
        tuple(((i, alpha), dm_shift(alpha, c))
              for i, b in enumerate(model.blocks) for alpha, _ in b.residues),
    )


def graded_table(spec, c=0):
    """Per-level ranks and shifted eigenvalues of the lattice in the window (c - 1, c]."""
    c = rational(c)
    levels = {}
    warnings = []
    for i, b in enumerate(spec.model.blocks):
        for alpha, mult in b.residues:
            n = spec.shift(i, alpha)
            level = n - alpha
            if not c - 1 < level <= c:
                msg = f"lattice not DM-normalized at level {c}"
                if msg not in warnings:
                    warnings.append(msg)
            levels.setdefault(level, Counter())[alpha - n] += mult
    entries = tuple(
        (a, sum(ev.values()), tuple(sorted(ev.items())))
        for a, ev in sorted(levels.items(), reverse=True)
    )
    return GradedTable(entries, (c - 1, c), tuple(warnings))


def spec_reg(spec):
    """Shifted eigenvalues on the regular blocks, as sorted (eigenvalue, mult) pairs."""
    out = Counter()
    for i, b in enumerate(spec.model.blocks):
        if b.is_regular:
            for alpha, mult in b.residues:
                out[alpha - spec.shift(i, alpha)] += mult
    return tuple(sorted(out.items()))


def classify_localization(spec):
    """star, shriek, both or neither, from the integral part of Sp^reg.

    (a) no eigenvalue in Z_{>0};  (b) no eigenvalue in Z_{<=0}.
    """
    integral = [a for a, _ in spec_reg(spec) if a.denominator == 1]
    cond_a = not any(a > 0 for a in integral)
    cond_b = not any(a <= 0 for a in integral)
    if cond_a and cond_b:
        return "both"
    if cond_a:
        return "star"
    if cond_b:
        return "shriek"
    return "neither"


# -- ramified covers and twists -----------------------------------------------

def _rescale(f, factor, variable):
    return f.map_exponents(lambda k: (k[0] * factor,), (variable,), 1)


def ramified_pullback(model, e, variable=None):
    """z = w^e: exponents and residues are multiplied by e."""
    e = int(e)
    if e < 1:
        raise DomainError("ramification index must be >= 1")
    var = variable or model.variable
    return GoodModel1D(tuple(
        Block(_rescale(b.value, e, var), tuple((a * e, m) for a, m in b.residues))
        for b in model.blocks
    ))


def _block_key(value, residues):
    return (value, tuple(residues))


def descent(model, e, variable=None):
    """Inverse of :func:`ramified_pullback`.

    The model must be closed under w -> zeta_e w.  Conjugates whose
    coefficients leave Q cannot be formed and are not checked.
    """
    e = int(e)
    if e < 1:
        raise DomainError("ramification index must be >= 1")
    present = Counter(_block_key(b.value, b.residues) for b in model.blocks)
    for t in range(1, e):
        for b in model.blocks:
            out = {}
            representable = True
            for (k,), v in b.value.items():
                mult = galois_multiplier(Fraction(t, e), k)
                if mult is None:
                    representable = False
                    break
                out[(k,)] = v * mult
            if not representable:
                continue
            conj = LaurentPuiseuxPoly(out, b.value.variables, 1)
            if _block_key(conj, b.residues) not in present:
                raise DomainError(f"model is not closed under w -> zeta_{e} w: missing conjugate of {b.value}")
    var = variable or model.variable
    return GoodModel1D(tuple(
        Block(_rescale(b.value, Fraction(1, e), var), tuple((a / e, m) for a, m in b.residues))
        for b in model.blocks
    ))


def sandwich_integers(alpha, e, a):
    """(N_{e(a-1)}, e*n_a, N_{ea}) for one rank-1 block with residue alpha."""
    alpha, a = rational(alpha), rational(a)
    n_a = dm_shift(alpha, a)
    lo = dm_shift(e * alpha, e * (a - 1))
    hi = dm_shift(e * alpha, e * a)
    return lo, e * n_a, hi


def dm_pullback_sandwich_check(model, e, a=0):
    """P^DM_{e(a-1)} of the pullback sits inside the pulled-back P^DM_a, inside P^DM_{ea}.

    For rank-1 blocks, w^(-N) v is contained in w^(-M) v iff N <= M.
    """
    for b in model.blocks:
        if b.rank != 1:
            raise DomainError("sandwich check needs rank-1 blocks")
        lo, mid, hi = sandwich_integers(b.residues[0][0], e, a)
        if not lo <= mid <= hi:
            return False
    return True


def twist(model, value, alpha):
    """Tensor with the rank-1 model (value, {alpha})."""
    if polar_class(value) != value:
        raise DomainError("twist needs a polar class")
    alpha = rational(alpha)
    return GoodModel1D(tuple(
        Block(b.value + value, tuple((x + alpha, m) for x, m in b.residues))
        for b in model.blocks
    ))


__all__ = [
    "Block", "GoodModel1D", "LatticeSpec", "GradedTable", "dm_shift", "window_shifts",
    "dm_lattice", "graded_table", "spec_reg", "classify_localization", "ramified_pullback",
    "descent", "sandwich_integers", "dm_pullback_sandwich_check", "twist",
]
