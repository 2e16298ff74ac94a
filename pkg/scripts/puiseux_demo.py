"""Expand a few plane covers and show branches, irregular values and kappa-shifted components.

    python3 scripts/puiseux_demo.py
    python3 scripts/puiseux_demo.py "0" "-z^-3"        # coefficients c1 .. cd
"""
import sys

from meroflat.algebra import format_poly
from meroflat.covers import PlaneCover, components, irregular_values, kappa_shift, newton_puiseux, pole_order
from meroflat.expr import parse

EXAMPLES = [
    ["0", "-z^-4"],
    ["0", "-z^-3"],
    ["-2*z^-2", "z^-4 - z^-5"],
    ["0", "-1 - z"],
    ["0", "0", "-z^-7"],
]


def show(coeffs):
    P = PlaneCover(tuple(parse(c) for c in coeffs))
    d = P.degree
    terms = ["xi^%d" % d] + [
        f"({format_poly(c)})*xi^{d - j}" for j, c in enumerate(P.coefficients, 1) if not c.is_zero()
    ]
    print("P =", " + ".join(terms))
    for b in newton_puiseux(P):
        g = b.guaranteed_valuation
        print(f"  branch {format_poly(b.series)}  e={b.ramification} x{b.multiplicity}  error val >= {g}")
    irr = irregular_values(P)
    note = "" if irr.galois_complete else "  (some conjugates leave Q)"
    print("  irregular values:", ", ".join(format_poly(a) for a in irr.values) + note)
    for a, (C, _) in components(P).items():
        shifted = kappa_shift(C, a)
        print(f"  component of {format_poly(a)} shifted: {[format_poly(c) for c in shifted.coefficients]}")
    print("  pole order:", pole_order(P))
    print()


if __name__ == "__main__":
    for coeffs in [sys.argv[1:]] if len(sys.argv) > 1 else EXAMPLES:
        show(coeffs)
