"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions in ascending degree with no trailing
zeros; the zero polynomial is ``()``.  Everything here is exact.
"""
from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError


def normalize(coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, scale(q, -1))


def scale(p, c):
    return normalize([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    lead = q[-1]
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return (), normalize(p)
    quot = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = p[k + dq] / lead
        quot[k] = c
        if c:
            for j in range(dq + 1):
                p[k + j] -= c * q[j]
    return normalize(quot), normalize(p[:dq])


def monic(p):
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd_(p, q):
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def derivative(p):
    return normalize([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p):
    """Yun's algorithm: monic A_1, A_2, ... with p = lc * prod A_i**i."""
    if degree(p) < 1:
        return []
    out = []
    a = gcd_(p, derivative(p))
    b = divmod_(p, a)[0]
    c = divmod_(derivative(p), a)[0]
    d = sub(c, derivative(b))
    while degree(b) > 0:
        g = gcd_(b, d)
        out.append(g)
        b = divmod_(b, g)[0]
        c = divmod_(d, g)[0]
        d = sub(c, derivative(b))
    # trailing constant factors are dropped; multiplicities are positional
    while out and degree(out[-1]) == 0:
        out.pop()
    return out


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(p):
    """Distinct rational roots of p with multiplicities, sorted ascending."""
    p = normalize(p)
    if degree(p) < 1:
        return []
    roots = {}
    zero_mult = 0
    while p and p[0] == 0:
        p = p[1:]
        zero_mult += 1
    if zero_mult:
        roots[Fraction(0)] = zero_mult
    if degree(p) >= 1:
        den = 1
        for c in p:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in p]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        for num in _divisors(ints[0]):
            for dd in _divisors(ints[-1]):
                for cand in (Fraction(num, dd), Fraction(-num, dd)):
                    if cand in roots:
                        continue
                    mult = 0
                    while degree(p) >= 1 and evaluate(p, cand) == 0:
                        p = divmod_(p, (-cand, Fraction(1)))[0]
                        mult += 1
                    if mult:
                        roots[cand] = mult
    return sorted(roots.items())


def exact_root(q, n):
    """The real n-th root of the rational q if it is rational, else None.

    For even n and q > 0 the positive root is returned.
    """
    q = Fraction(q)
    if n == 1 or q == 0:
        return q
    if q < 0:
        if n % 2 == 0:
            return None
        r = exact_root(-q, n)
        return None if r is None else -r
    num = _int_root(q.numerator, n)
    den = _int_root(q.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(m, n):
    if m < 2:
        return m
    # start above the root so Newton's iteration decreases monotonically
    r = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        nxt = ((n - 1) * r + m // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == m:
            return cand
    return None


def from_roots(roots):
    p = (Fraction(1),)
    for r in roots:
        p = mul(p, (-Fraction(r), Fraction(1)))
    return p


def require_nonzero(p, what="polynomial"):
    if not p:
        raise DomainError(f"{what} is zero")
    return p
