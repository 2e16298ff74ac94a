"""Exact sparse Laurent-Puiseux polynomials over Q.

Variables are split into *divisor* variables (the first ``ndiv`` names),
which may carry negative and fractional exponents, and *tame* variables,
which carry non-negative integer exponents.  Coefficients are
:class:`fractions.Fraction`.
"""
from fractions import Fraction
from math import lcm
from numbers import Rational as _RationalABC

from . import upoly
from .errors import DomainError, ParseError

Rational = Fraction


def rational(value):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _ZeroOrder:
    """ord() of the zero class; compares as the zero vector in goodness tests."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_ZeroOrder, ())


ZERO = _ZeroOrder()


class LaurentPuiseuxPoly:
    """Immutable finite-support polynomial with rational exponents on divisor variables."""

    __slots__ = ("variables", "ndiv", "_terms", "_hash")

    def __init__(self, terms=None, variables=("z",), ndiv=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if ndiv is None:
            ndiv = len(variables)
        if not 0 <= ndiv <= len(variables):
            raise ValueError("ndiv out of range")
        clean = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for exps, coeff in items:
            exps = tuple(Fraction(e) for e in exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent vector {exps} does not match variables {variables}")
            for e in exps[ndiv:]:
                if e < 0 or e.denominator != 1:
                    raise DomainError(f"tame variable exponent must be a non-negative integer, got {e}")
            coeff = rational(coeff)
            if coeff:
                total = clean.get(exps, 0) + coeff
                if total:
                    clean[exps] = total
                else:
                    clean.pop(exps, None)
        self.variables = variables
        self.ndiv = ndiv
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, variables=("z",), ndiv=None):
        n = len(tuple(variables))
        return cls({(0,) * n: c}, variables, ndiv)

    @classmethod
    def monomial(cls, exps, coeff=1, variables=("z",), ndiv=None):
        return cls({tuple(exps): coeff}, variables, ndiv)

    @classmethod
    def var(cls, name, variables, ndiv=None, power=1):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = power
        return cls({tuple(exps): 1}, variables, ndiv)

    @classmethod
    def single(cls, pairs, name="z"):
        """One-variable helper: ``single({-2: 1, Fraction(-1, 2): 3})``."""
        items = pairs.items() if isinstance(pairs, dict) else pairs
        return cls({(Fraction(k),): v for k, v in items}, (name,), 1)

    def zero(self):
        return LaurentPuiseuxPoly({}, self.variables, self.ndiv)

    def one(self):
        return LaurentPuiseuxPoly.constant(1, self.variables, self.ndiv)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return tuple(self._terms.items())

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def coefficient(self, exps):
        return self._terms.get(tuple(Fraction(e) for e in exps), Fraction(0))

    def constant_term(self):
        return self.coefficient((0,) * len(self.variables))

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    @property
    def ramification(self):
        e = 1
        for exps in self._terms:
            for x in exps[: self.ndiv]:
                e = lcm(e, x.denominator)
        return e

    def valuation(self, index=0):
        """Minimum exponent of one variable over the support (None for 0)."""
        if not self._terms:
            return None
        return min(exps[index] for exps in self._terms)

    def leading_coefficient(self, index=0):
        """Coefficient of the lowest-order term in a one-variable polynomial."""
        if len(self.variables) != 1:
            raise ValueError("leading_coefficient needs a single-variable polynomial")
        v = self.valuation(index)
        return None if v is None else self._terms[(v,)]

    def max_exponent(self, index=0):
        if not self._terms:
            return None
        return max(exps[index] for exps in self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPuiseuxPoly):
            if other.variables != self.variables or other.ndiv != self.ndiv:
                raise ValueError(
                    f"variable mismatch: {self.variables}/{self.ndiv} vs {other.variables}/{other.ndiv}"
                )
            return other
        if isinstance(other, (int, Fraction, _RationalABC)) and not isinstance(other, bool):
            return LaurentPuiseuxPoly.constant(rational(other), self.variables, self.ndiv)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPuiseuxPoly(out, self.variables, self.ndiv)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPuiseuxPoly({k: -v for k, v in self._terms.items()}, self.variables, self.ndiv)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPuiseuxPoly(out, self.variables, self.ndiv)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            if len(self._terms) != 1:
                raise DomainError("negative powers are only defined for monomials")
            (exps, c), = self._terms.items()
            return LaurentPuiseuxPoly({tuple(e * n for e in exps): c ** n}, self.variables, self.ndiv)
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = rational(c)
        return LaurentPuiseuxPoly({k: v * c for k, v in self._terms.items()}, self.variables, self.ndiv)

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        exps = tuple(Fraction(e) for e in exps)
        return LaurentPuiseuxPoly(
            {tuple(a + b for a, b in zip(k, exps)): v for k, v in self._terms.items()},
            self.variables, self.ndiv,
        )

    # -- structural maps --------------------------------------------------
    def filter(self, keep):
        """Sub-polynomial of the terms whose exponent vector satisfies ``keep``."""
        return LaurentPuiseuxPoly(
            {k: v for k, v in self._terms.items() if keep(k)}, self.variables, self.ndiv
        )

    def truncate(self, bound, index=0):
        """Drop terms whose exponent in ``variables[index]`` is >= bound."""
        return self.filter(lambda k: k[index] < bound)

    def map_exponents(self, fn, variables=None, ndiv=None):
        variables = self.variables if variables is None else tuple(variables)
        ndiv = self.ndiv if ndiv is None and variables == self.variables else ndiv
        out = {}
        for k, v in self._terms.items():
            nk = tuple(fn(k))
            out[nk] = out.get(nk, 0) + v
        return LaurentPuiseuxPoly(out, variables, ndiv)

    def map_coefficients(self, fn):
        return LaurentPuiseuxPoly(
            {k: fn(k, v) for k, v in self._terms.items()}, self.variables, self.ndiv
        )

    def rename(self, variables):
        return LaurentPuiseuxPoly(self._terms, variables, self.ndiv)

    def evaluate(self, point):
        """Exact value at a point given as ``{name: Fraction}`` for every variable.

        Fractional exponents are allowed only when the needed root is rational.
        """
        total = Fraction(0)
        for k, v in self._terms.items():
            term = v
            for name, e in zip(self.variables, k):
                if not e:
                    continue
                x = rational(point[name])
                if x == 0:
                    if e < 0:
                        raise DomainError(f"pole at {name}=0")
                    term = Fraction(0)
                    break
                root = upoly.exact_root(x, e.denominator)
                if root is None:
                    raise DomainError(f"{name}^{e} is irrational at {name}={x}")
                term *= root ** e.numerator
            total += term
        return total

    def partial_evaluate(self, point):
        """Substitute rational values for some tame variables, keeping the others."""
        names = set(point)
        idx = [i for i, n in enumerate(self.variables) if n in names]
        for i in idx:
            if i < self.ndiv:
                raise DomainError("partial_evaluate only substitutes tame variables")
        out = {}
        for k, v in self._terms.items():
            c = v
            for i in idx:
                c *= rational(point[self.variables[i]]) ** int(k[i])
            nk = tuple(Fraction(0) if i in idx else e for i, e in enumerate(k))
            out[nk] = out.get(nk, 0) + c
        return LaurentPuiseuxPoly(out, self.variables, self.ndiv)

    def recenter(self, point):
        """Translate tame variables: y -> y + point[y] (expansion at a new base point)."""
        result = self.zero()
        for k, v in self._terms.items():
            term = LaurentPuiseuxPoly.monomial(
                tuple(e if self.variables[i] not in point else 0 for i, e in enumerate(k)),
                v, self.variables, self.ndiv,
            )
            for i, name in enumerate(self.variables):
                if name in point and k[i]:
                    if i < self.ndiv:
                        raise DomainError("recenter only moves tame variables")
                    lin = LaurentPuiseuxPoly.var(name, self.variables, self.ndiv) + rational(point[name])
                    term = term * lin ** int(k[i])
            result = result + term
        return result

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPuiseuxPoly):
            return (self.variables == other.variables and self.ndiv == other.ndiv
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self.ndiv, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPuiseuxPoly({format_poly(self)!r}, {self.variables}, ndiv={self.ndiv})"

    def __str__(self):
        return format_poly(self)


LPP = LaurentPuiseuxPoly


# -- formatting (inverse of expr.parse) -----------------------------------

def _format_exponent(e):
    if e.denominator == 1 and e > 0:
        return str(e.numerator)
    return f"({format_rational(e)})"


def format_poly(f):
    if not f._terms:
        return "0"
    # highest-order terms first reads naturally; reverse of the canonical order
    parts = []
    for exps, c in reversed(list(f._terms.items())):
        factors = [
            name if e == 1 else f"{name}^{_format_exponent(e)}"
            for name, e in zip(f.variables, exps) if e
        ]
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else format_rational(mag) + "*" + "*".join(factors)
        else:
            body = format_rational(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- the order function and polar parts ------------------------------------

def is_polar_monomial(exps, ndiv):
    return any(e < 0 for e in exps[:ndiv])


def polar_class(f):
    """Canonical representative of f modulo the power-series ring."""
    return f.filter(lambda k: is_polar_monomial(k, f.ndiv))


def ord_(f):
    """Order of a class in O(*H)/O.

    Returns a tuple of Fractions (one per divisor variable), ``None`` when
    the order is undefined, and :data:`ZERO` for the zero element.
    Invertibility of the unit part is judged from its constant term.
    """
    if f.is_zero():
        return ZERO
    p = polar_class(f)
    if p.is_zero():
        return (Fraction(0),) * f.ndiv
    m = tuple(min(k[i] for k in p._terms) for i in range(f.ndiv))
    if any(x > 0 for x in m):
        return None
    unit_exps = m + (Fraction(0),) * (len(f.variables) - f.ndiv)
    if p._terms.get(unit_exps, 0) == 0:
        return None
    return m


def unit_part(f, m):
    """x^{-m} f for a divisor multi-index m."""
    shift = tuple(-x for x in m) + (0,) * (len(f.variables) - f.ndiv)
    return f.shift(shift)


def order_leq(m1, m2):
    """Componentwise partial order; ZERO is the zero vector."""
    if m1 is ZERO or m2 is ZERO:
        n = len(m2) if m1 is ZERO and m2 is not ZERO else len(m1) if m1 is not ZERO else 0
        m1 = (Fraction(0),) * n if m1 is ZERO else m1
        m2 = (Fraction(0),) * n if m2 is ZERO else m2
    return all(a <= b for a, b in zip(m1, m2))


def comparable(m1, m2):
    return order_leq(m1, m2) or order_leq(m2, m1)


# -- one-variable calculus ---------------------------------------------------

def _require_single(f):
    if len(f.variables) != 1:
        raise DomainError("operation needs a single-variable polynomial")


def log_derivative(f):
    """z d/dz: z^m -> m z^m."""
    _require_single(f)
    return f.map_coefficients(lambda k, v: k[0] * v)


def derivative(f):
    """d/dz: z^m -> m z^(m-1)."""
    _require_single(f)
    out = {}
    for (m,), v in f.items():
        if m:
            out[(m - 1,)] = m * v
    return LaurentPuiseuxPoly(out, f.variables, f.ndiv)


def integrate_polar(g, frame="log"):
    """Inverse of :func:`log_derivative` (frame ``"log"``) or :func:`derivative` (frame ``"dz"``).

    The exponent-0 monomial in the log frame (z^-1 in the dz frame) is a
    residue term and cannot be integrated to a Laurent-Puiseux polynomial.
    """
    _require_single(g)
    out = {}
    for (m,), v in g.items():
        if frame == "log":
            if m == 0:
                raise DomainError("non-integrable residue term (exponent 0 in the z d/dz frame)")
            out[(m,)] = v / m
        elif frame == "dz":
            if m == -1:
                raise DomainError("non-integrable residue term (z^-1 dz)")
            out[(m + 1,)] = v / (m + 1)
        else:
            raise ValueError(f"unknown frame {frame!r}")
    return LaurentPuiseuxPoly(out, g.variables, g.ndiv)


# -- exact division in Q[z^(1/E), z^(-1/E)] ------------------------------------

def _to_dense(f, E):
    v = f.valuation()
    coeffs = [Fraction(0)] * (int((f.max_exponent() - v) * E) + 1)
    for (m,), c in f.items():
        coeffs[int((m - v) * E)] = c
    return v, upoly.normalize(coeffs)


def exact_div(f, g):
    """f / g in the one-variable Laurent-Puiseux ring; raises if g does not divide f."""
    _require_single(f)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f.zero()
    E = lcm(f.ramification, g.ramification)
    vf, pf = _to_dense(f, E)
    vg, pg = _to_dense(g, E)
    q, r = upoly.divmod_(pf, pg)
    if r:
        raise DomainError("inexact division")
    base = vf - vg
    return LaurentPuiseuxPoly(
        {(base + Fraction(i, E),): c for i, c in enumerate(q) if c}, f.variables, f.ndiv
    )


def galois_multiplier(turn, exponent):
    """exp(2*pi*i*turn*exponent) if it is +-1, else None."""
    x = Fraction(turn) * Fraction(exponent)
    if x.denominator == 1:
        return 1
    if x.denominator == 2:
        return -1
    return None


def galois_conjugate(f, turn, index=0):
    """Apply z^k -> exp(2 pi i turn k) z^k to one divisor variable.

    Raises DomainError when a multiplier is not rational (the orbit is not
    representable with Q coefficients).
    """
    out = {}
    for k, v in f.items():
        mult = galois_multiplier(turn, k[index])
        if mult is None:
            raise DomainError("Galois conjugate is not representable over Q")
        out[k] = v * mult
    return LaurentPuiseuxPoly(out, f.variables, f.ndiv)


def common_ramification(polys):
    e = 1
    for p in polys:
        e = lcm(e, p.ramification)
    return e


__all__ = [
    "Rational", "rational", "format_rational", "LaurentPuiseuxPoly", "LPP", "ZERO",
    "polar_class", "ord_", "unit_part", "order_leq", "comparable", "log_derivative",
    "derivative", "integrate_polar", "exact_div", "galois_conjugate", "galois_multiplier",
    "common_ramification", "format_poly",
]
