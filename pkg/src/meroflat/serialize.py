"""JSON encoding of domain objects.

Rationals are strings ``"p/q"`` and polynomials are strings in the
expression grammar, so encoding never goes through floats.  Each decoder
accepts exactly what the matching encoder produces, which is also the
payload format of the command-line interface.
"""
from .algebra import LaurentPuiseuxPoly, format_poly, format_rational, rational
from .connections import Block, GoodModel1D, GradedTable, LatticeSpec
from .covers import INF, PlaneCover, PuiseuxBranch
from .errors import ParseError
from .expr import parse
from .goodness import IrregularValueSet
from .invariants import (
    ChainCertificate,
    HilbertData,
    ParabolicBundleData,
    SlopeContext,
    SurfaceLatticeData,
)
from .partitions import LagrangianCycle, MultisetPoint, Partition


def q(x):
    """Rational (or inf) to its string form."""
    if x == INF:
        return "inf"
    return format_rational(x)


def unq(s):
    if s == "inf":
        return INF
    return rational(s)


def _poly(text, divisors, tame=(), where=""):
    try:
        return parse(text, divisors, tame)
    except ParseError as exc:
        if not where:
            raise
        err = ParseError(f"{where}: {exc}")
        err.position, err.source = exc.position, text
        raise err from None


# -- polynomials and value sets ----------------------------------------------------

def encode_value_set(I):
    return {
        "divisors": list(I.variables[: I.ndiv]),
        "tame": list(I.variables[I.ndiv:]),
        "values": [format_poly(a) for a in I.elements],
    }


def decode_value_set(data, where="values"):
    divs, tame = tuple(data["divisors"]), tuple(data.get("tame", ()))
    values = [_poly(t, divs, tame, f"{where}[{i}]") for i, t in enumerate(data["values"])]
    return IrregularValueSet.from_values(values, divs + tame, len(divs))


def encode_poly(f):
    return {
        "divisors": list(f.variables[: f.ndiv]),
        "tame": list(f.variables[f.ndiv:]),
        "expr": format_poly(f),
    }


def decode_poly(data, where="expr"):
    return _poly(data["expr"], tuple(data["divisors"]), tuple(data.get("tame", ())), where)


# -- combinatorics ---------------------------------------------------------------------

def encode_partition(P):
    return list(P.parts)


def decode_partition(data):
    return Partition(tuple(data))


def encode_point(alpha):
    return [[q(x) for x in v] for v in alpha.entries]


def decode_point(data):
    return MultisetPoint(tuple(
        tuple(unq(x) for x in e) if isinstance(e, list) else unq(e) for e in data
    ))


def encode_cycle(cc):
    return dict(cc.multiplicities)


def decode_cycle(data):
    return LagrangianCycle(tuple(data.items()))


# -- covers ------------------------------------------------------------------------

def encode_cover(P):
    return {
        "base": P.base,
        "fiber": P.fiber,
        "coefficients": [format_poly(c) for c in P.coefficients],
    }


def decode_cover(data, where="coefficients"):
    base = data.get("base", "z")
    coeffs = tuple(
        _poly(t, (base,), (), f"{where}[{i}]") for i, t in enumerate(data["coefficients"])
    )
    return PlaneCover(coeffs, base, data.get("fiber", "xi"))


def encode_branch(b):
    return {
        "series": format_poly(b.series),
        "variable": b.series.variables[0],
        "ramification": b.ramification,
        "multiplicity": b.multiplicity,
        "guaranteed_valuation": q(b.guaranteed_valuation),
        "base_ramification": b.base_ramification,
    }


def decode_branch(data):
    var = data.get("variable", "z")
    return PuiseuxBranch(
        _poly(data["series"], (var,), (), "series"),
        int(data["ramification"]),
        int(data["multiplicity"]),
        unq(data["guaranteed_valuation"]),
        int(data.get("base_ramification", 1)),
    )


# -- formal connections ---------------------------------------------------------------

def encode_model(m):
    return {
        "variable": m.variable,
        "blocks": [
            {"a": format_poly(b.value), "residues": [[q(a), k] for a, k in b.residues]}
            for b in m.blocks
        ],
    }


def decode_model(data, where="blocks"):
    var = data.get("variable", "z")
    blocks = []
    for i, blk in enumerate(data["blocks"]):
        value = _poly(blk["a"], (var,), (), f"{where}[{i}].a")
        blocks.append(Block(value, tuple((unq(a), int(k)) for a, k in blk["residues"])))
    return GoodModel1D(tuple(blocks))


def encode_lattice(spec):
    return {
        "model": encode_model(spec.model),
        "shifts": [[i, q(a), n] for (i, a), n in spec.shifts],
    }


def decode_lattice(data):
    return LatticeSpec(
        decode_model(data["model"], "model.blocks"),
        tuple(((int(i), unq(a)), int(n)) for i, a, n in data["shifts"]),
    )


def encode_table(t):
    return {
        "window": [q(t.window[0]), q(t.window[1])],
        "entries": [
            {"level": q(a), "rank": r, "eigenvalues": [[q(x), k] for x, k in ev]}
            for a, r, ev in t.entries
        ],
        "warnings": list(t.warnings),
    }


def decode_table(data):
    return GradedTable(
        tuple(
            (unq(e["level"]), int(e["rank"]), tuple((unq(x), int(k)) for x, k in e["eigenvalues"]))
            for e in data["entries"]
        ),
        tuple(unq(x) for x in data["window"]),
        tuple(data.get("warnings", ())),
    )


# -- invariants --------------------------------------------------------------------

def encode_parabolic(d):
    return {
        "deg_P0": d.deg_P0,
        "rank": d.rank,
        "points": [
            {"label": label, "jumps": [[q(a), r] for a, r in jumps]} for label, jumps in d.points
        ],
    }


def decode_parabolic(data):
    return ParabolicBundleData(
        int(data["deg_P0"]),
        int(data["rank"]),
        tuple((p["label"], tuple((unq(a), int(r)) for a, r in p["jumps"])) for p in data["points"]),
    )


def encode_surface(d):
    return {
        "rank": d.rank,
        "divisors": [
            {"label": l, "self_intersection": q(s), "omega_degree": q(w)} for l, s, w in d.divisors
        ],
        "intersection": [[q(x) for x in row] for row in d.intersection],
        "graded": [[[q(a), r, q(dg)] for a, r, dg in rows] for rows in d.graded],
        "crossings": [
            {"i": i, "j": j, "label": label, "ranks": [[q(a), q(b), r] for (a, b), r in ranks]}
            for i, j, label, ranks in d.crossings
        ],
    }


def decode_surface(data):
    return SurfaceLatticeData(
        int(data["rank"]),
        tuple((d["label"], unq(d["self_intersection"]), unq(d["omega_degree"])) for d in data["divisors"]),
        tuple(tuple(unq(x) for x in row) for row in data["intersection"]),
        tuple(tuple((unq(a), int(r), unq(dg)) for a, r, dg in rows) for rows in data["graded"]),
        tuple(
            (c["i"], c["j"], c["label"], tuple(((unq(a), unq(b)), int(r)) for a, b, r in c["ranks"]))
            for c in data.get("crossings", ())
        ),
    )


def encode_slope_context(ctx):
    return {"M2": q(ctx.M2), "N": ctx.N, "deg_omega_H": q(ctx.deg_omega_H), "rank": ctx.rank}


def decode_slope_context(data):
    return SlopeContext(unq(data["M2"]), int(data["N"]), unq(data["deg_omega_H"]), int(data["rank"]))


def encode_hilbert(h):
    return {"n": h.n, "coefficients": list(h.coefficients)}


def decode_hilbert(data):
    return HilbertData(int(data["n"]), tuple(int(a) for a in data["coefficients"]))


def encode_chain(c):
    return {
        "chain": [[k, i] for k, i in c.chain],
        "q": c.q,
        "delta": q(c.delta),
        "verified_bound": c.verified_bound,
    }


def decode_chain(data):
    return ChainCertificate(
        tuple((int(k), int(i)) for k, i in data["chain"]),
        int(data["q"]),
        unq(data["delta"]),
        bool(data["verified_bound"]),
    )


CODECS = {
    IrregularValueSet: ("value-set", encode_value_set, decode_value_set),
    LaurentPuiseuxPoly: ("poly", encode_poly, decode_poly),
    Partition: ("partition", encode_partition, decode_partition),
    MultisetPoint: ("point", encode_point, decode_point),
    LagrangianCycle: ("cycle", encode_cycle, decode_cycle),
    PlaneCover: ("cover", encode_cover, decode_cover),
    PuiseuxBranch: ("branch", encode_branch, decode_branch),
    GoodModel1D: ("model", encode_model, decode_model),
    LatticeSpec: ("lattice", encode_lattice, decode_lattice),
    GradedTable: ("graded-table", encode_table, decode_table),
    ParabolicBundleData: ("parabolic", encode_parabolic, decode_parabolic),
    SurfaceLatticeData: ("surface", encode_surface, decode_surface),
    SlopeContext: ("slope-context", encode_slope_context, decode_slope_context),
    HilbertData: ("hilbert", encode_hilbert, decode_hilbert),
    ChainCertificate: ("chain", encode_chain, decode_chain),
}
_BY_NAME = {name: dec for name, _, dec in CODECS.values()}


def encode(obj):
    """Tagged encoding ``{"type": ..., "data": ...}``."""
    name, enc, _ = CODECS[type(obj)]
    return {"type": name, "data": enc(obj)}


def decode(doc):
    return _BY_NAME[doc["type"]](doc["data"])


__all__ = ["q", "unq", "encode", "decode", "CODECS"] + [
    n for n in dir() if n.startswith(("encode_", "decode_"))
]
