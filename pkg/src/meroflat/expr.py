"""Parser for the polynomial expression grammar.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational ('*' factor)* | factor ('*' factor)*
    factor   := name ['^' exponent]
    exponent := integer | '(' rational ')'
    rational := int ['/' posint]

Example: ``3/2*z^(-3/2)*w^2 - 1``.  :func:`meroflat.algebra.format_poly`
produces strings this parser reads back to the same polynomial.
"""
import re
from fractions import Fraction

from .algebra import LaurentPuiseuxPoly
from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            at = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", at, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def signed_int(self):
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        return sign * int(self.take("int")[1])

    def rational(self):
        num = self.signed_int()
        if self.at("op", "/"):
            self.take()
            tok = self.take("int")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2], self.text)
            return Fraction(num, den)
        return Fraction(num)

    def exponent(self):
        if self.at("op", "("):
            self.take()
            q = self.rational()
            self.take("op", ")")
            return q
        return Fraction(self.signed_int())

    def factor(self):
        tok = self.take("name")
        e = Fraction(1)
        if self.at("op", "^"):
            self.take()
            e = self.exponent()
        return tok[1], e, tok[2]

    def term(self):
        coeff = Fraction(1)
        factors = []
        if self.at("int"):
            num = int(self.take()[1])
            if self.at("op", "/"):
                self.take()
                tok = self.take("int")
                if int(tok[1]) == 0:
                    raise ParseError("zero denominator", tok[2], self.text)
                coeff = Fraction(num, int(tok[1]))
            else:
                coeff = Fraction(num)
        else:
            factors.append(self.factor())
        while self.at("op", "*"):
            self.take()
            factors.append(self.factor())
        return coeff, factors

    def expr(self):
        out = []
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            coeff, factors = self.term()
            out.append((sign * coeff, factors))
            if self.at("op", "+") or self.at("op", "-"):
                sign = -1 if self.take()[1] == "-" else 1
                continue
            break
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return out


def parse(text, divisors=("z",), tame=()):
    """Parse ``text`` into a LaurentPuiseuxPoly over ``divisors + tame``.

    Unknown variable names, fractional or negative tame exponents, and
    syntax errors raise :class:`ParseError` carrying the offset.
    """
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {type(text).__name__}")
    variables = tuple(divisors) + tuple(tame)
    index = {n: i for i, n in enumerate(variables)}
    ndiv = len(tuple(divisors))
    terms = {}
    for coeff, factors in _Parser(text).expr():
        exps = [Fraction(0)] * len(variables)
        for name, e, pos in factors:
            if name not in index:
                raise ParseError(f"unknown variable {name!r}", pos, text)
            i = index[name]
            if i >= ndiv and (e < 0 or e.denominator != 1):
                raise ParseError(f"tame variable {name!r} needs a non-negative integer exponent", pos, text)
            exps[i] += e
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPuiseuxPoly(terms, variables, ndiv)
