"""Batch front end.

    meroflat run jobs.json [--format json|table] [--precision Q] [--jobs N]
    meroflat fixtures [--seed N]

A job file holds one job or a list of jobs ``{"id", "command", "payload"}``.
Every payload is validated and its expressions parsed before anything
runs; a failure there exits with status 2 and names the location.  Domain
and resource errors are per-job results, so a batch that parses exits 0.
"""
import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import jsonschema

from . import covers as C
from . import serialize as S
from .algebra import format_poly, rational
from .connections import (
    LatticeSpec,
    classify_localization,
    dm_lattice,
    graded_table,
    spec_reg,
)
from .errors import DomainError, ParseError, ResourceError
from .goodness import bad_locus, is_good_set, monomial_pullback
from .invariants import (
    C1,
    c1_bound_check,
    c1_box_check,
    ch2_c2,
    chain_certificate,
    hilbert_coeffs,
    hilbert_polynomial,
    parabolic_degree,
    pullback_parabolic,
    slope_bounds,
)
from .partitions import (
    cc_leq,
    chow_basis,
    chow_coordinates,
    ordered_partitions,
    partition_leq,
    partition_of_point,
    strata_above,
    strata_below,
)

q = S.q

# -- schemas -------------------------------------------------------------------------

RAT = {"type": ["string", "integer"], "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}
EXPR = {"type": "string"}
NAMES = {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z_0-9]*$"}}
POS = {"type": "integer", "minimum": 1}
NAT = {"type": "integer", "minimum": 0}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props}


VALUES = _obj(["divisors", "values"], divisors=NAMES, tame=NAMES,
              values={"type": "array", "items": EXPR})
COVER = _obj(["coefficients"], base=EXPR, fiber=EXPR, target=RAT,
             coefficients={"type": "array", "minItems": 1, "items": EXPR}, fiber_at=RAT)
MODEL = _obj(["blocks"], variable=EXPR, blocks={"type": "array", "minItems": 1, "items": _obj(
    ["a", "residues"], a=EXPR,
    residues={"type": "array", "items": {"type": "array", "prefixItems": [RAT, POS],
                                          "minItems": 2, "maxItems": 2}})})
CYCLE = {"type": "object", "additionalProperties": NAT}
POINT = {"type": "array", "minItems": 1,
         "items": {"anyOf": [RAT, {"type": "array", "minItems": 1, "items": RAT}]}}
PARTITION = {"type": "array", "minItems": 1, "items": POS}
JUMP = {"type": "array", "minItems": 2, "maxItems": 2, "prefixItems": [RAT, POS]}

SCHEMAS = {
    "good-check": VALUES,
    "bad-locus": VALUES,
    "pullback": dict(VALUES, required=["divisors", "values", "substitution"], properties=dict(
        VALUES["properties"], substitution={"type": "object", "additionalProperties": {
            "type": "object", "additionalProperties": NAT}})),
    "partition": {"type": "object", "properties": {
        "point": POINT, "leq": {"type": "array", "minItems": 2, "maxItems": 2, "items": PARTITION}},
        "anyOf": [{"required": ["point"]}, {"required": ["leq"]}]},
    "chow": _obj(["point"], point=POINT),
    "strata": _obj(["partition"], partition=PARTITION, direction={"enum": ["above", "below"]}),
    "cc": _obj(["cycle", "bound"], cycle=CYCLE, bound=CYCLE),
    "ordered-partitions": _obj(["cycle"], cycle=CYCLE),
    "puiseux": COVER,
    "cover": COVER,
    "kappa": _obj(["cover", "a"], cover=COVER, a=EXPR),
    "dm": _obj(["model"], model=MODEL, c=RAT, shifts={"type": "array", "items": {
        "type": "array", "minItems": 3, "maxItems": 3}}),
    "classify": _obj(["model"], model=MODEL, c=RAT, shifts={"type": "array"}),
    "parabolic": _obj(["deg_P0", "rank", "points"], deg_P0={"type": "integer"}, rank=POS,
                      points={"type": "array", "items": _obj(
                          ["label", "jumps"], label={"type": "string"},
                          jumps={"type": "array", "items": JUMP})},
                      cover=_obj(["degree"], degree=POS, profile={
                          "type": "object", "additionalProperties": {"type": "array", "items": POS}})),
    "surface": _obj(["rank", "divisors", "intersection", "graded"], rank=POS,
                    divisors={"type": "array", "items": _obj(
                        ["label", "self_intersection", "omega_degree"], label={"type": "string"},
                        self_intersection=RAT, omega_degree=RAT)},
                    intersection={"type": "array", "items": {"type": "array", "items": RAT}},
                    graded={"type": "array", "items": {"type": "array", "items": {
                        "type": "array", "minItems": 3, "maxItems": 3}}},
                    crossings={"type": "array", "items": _obj(
                        ["i", "j", "label", "ranks"], i=NAT, j=NAT, label={"type": "string"},
                        ranks={"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}})}),
    "hilbert": {"type": "object", "properties": {
        "n": NAT, "polynomial": {"type": "array", "items": RAT},
        "coefficients": {"type": "array", "items": {"type": "integer"}}},
        "anyOf": [{"required": ["polynomial"]}, {"required": ["n", "coefficients"]}]},
    "slope": _obj(["M2", "N", "deg_omega_H", "rank", "mu"], M2=RAT, N=POS, deg_omega_H=RAT,
                  rank=POS, mu=RAT, spread=RAT),
    "chain": _obj(["slopes", "edges"], slopes={"type": "array", "items": RAT}, delta=RAT,
                  edges={"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2,
                                                    "items": NAT}}),
}
COMMANDS = tuple(SCHEMAS)

JOB = {
    "type": "object",
    "required": ["command", "payload"],
    "properties": {"id": {"type": "string"}, "command": {"enum": list(COMMANDS)},
                   "payload": {"type": "object"}},
}


# -- handlers: payload -> (decoded args) -> result ------------------------------------

def _orders(res):
    out = {}
    for a, m in res.diagnostic.orders.items():
        out[format_poly(a)] = None if m is None else "zero" if not isinstance(m, tuple) else [q(x) for x in m]
    return out


def _good_check(p, opts):
    I = S.decode_value_set(p)
    res = is_good_set(I)
    d = res.diagnostic
    return {
        "good": res.good,
        "failure": d.kind,
        "witness": [format_poly(a) for a in d.witness],
        "orders": _orders(res),
        "galois": d.galois,
    }


def _bad_locus(p, opts):
    desc = bad_locus(S.decode_value_set(p))
    return {"components": [
        {"equation": format_poly(c.equation), "divisors": list(c.divisors),
         "source": [format_poly(a) for a in c.source]}
        for c in desc.components
    ]}


def _pullback(p, opts):
    I = S.decode_value_set(p)
    return S.encode_value_set(monomial_pullback(I, p["substitution"]))


def _partition(p, opts):
    out = {}
    if "point" in p:
        P, distinct = partition_of_point(S.decode_point(p["point"]))
        out.update(partition=S.encode_partition(P), distinct=distinct)
    if "leq" in p:
        P1, P2 = (S.decode_partition(x) for x in p["leq"])
        out["leq"] = partition_leq(P1, P2)
    return out


def _chow(p, opts):
    alpha = S.decode_point(p["point"])
    return {"basis": [list(k) for k in chow_basis(alpha.r, alpha.dim)],
            "coordinates": [q(x) for x in chow_coordinates(alpha)]}


def _strata(p, opts):
    P = S.decode_partition(p["partition"])
    fn = strata_below if p.get("direction", "above") == "below" else strata_above
    return {"strata": [S.encode_partition(x) for x in fn(P)]}


def _cc(p, opts):
    return {"leq": cc_leq(S.decode_cycle(p["cycle"]), S.decode_cycle(p["bound"]))}


def _ordered(p, opts):
    parts = ordered_partitions(S.decode_cycle(p["cycle"]))
    return {"count": len(parts), "partitions": [[S.encode_cycle(c) for c in t] for t in parts]}


def _target(p, opts):
    if "target" in p:
        return rational(p["target"])
    return opts.get("precision")


def _puiseux(p, opts):
    P = S.decode_cover(p)
    target = _target(p, opts)
    target = C.default_target(P) if target is None else target
    branches = C.newton_puiseux(P, target)
    return {"target": q(target), "branches": [S.encode_branch(b) for b in branches]}


def _cover(p, opts):
    P = S.decode_cover(p)
    target = _target(p, opts)
    branches = C.newton_puiseux(P, target)
    irr = C.irregular_values(P, branches=branches)
    generic, res = C.generic_fiber_partition(P)
    out = {
        "degree": P.degree,
        "logarithmic": C.is_logarithmic(P),
        "pole_order": C.pole_order(P),
        "values": [format_poly(a) for a in irr.values],
        "branch_values": [format_poly(a) for a in irr.branch_values],
        "galois_complete": irr.galois_complete,
        "resultant": format_poly(res),
        "generic_partition": S.encode_partition(generic),
    }
    if "fiber_at" in p:
        out["fiber_partition"] = S.encode_partition(C.fiber_partition(P, rational(p["fiber_at"])))
    return out


def _kappa(p, opts):
    P = S.decode_cover(p["cover"], "cover.coefficients")
    a = S._poly(p["a"], (P.base,), (), "a")
    shifted = C.kappa_shift(P, a)
    return dict(S.encode_cover(shifted), logarithmic=C.is_logarithmic(shifted))


def _lattice(p):
    model = S.decode_model(p["model"], "model.blocks")
    c = rational(p.get("c", 0))
    if "shifts" in p:
        spec = LatticeSpec(model, tuple(((int(i), rational(a)), int(n)) for i, a, n in p["shifts"]))
    else:
        spec = dm_lattice(model, c)
    return spec, c


def _dm(p, opts):
    spec, c = _lattice(p)
    return {
        "shifts": [[i, q(a), n] for (i, a), n in spec.shifts],
        "table": S.encode_table(graded_table(spec, c)),
    }


def _classify(p, opts):
    spec, _ = _lattice(p)
    return {
        "classification": classify_localization(spec),
        "sp_reg": [[q(a), k] for a, k in spec_reg(spec)],
    }


def _parabolic(p, opts):
    d = S.decode_parabolic(p)
    out = {"degree": q(parabolic_degree(d))}
    if "cover" in p:
        cov = p["cover"]
        pulled = pullback_parabolic(d, cov.get("profile", {}), cov["degree"])
        out["pullback"] = S.encode_parabolic(pulled)
        out["pullback_degree"] = q(parabolic_degree(pulled))
        out["multiplicative"] = parabolic_degree(pulled) == cov["degree"] * parabolic_degree(d)
    return out


def _surface(p, opts):
    d = S.decode_surface(p)
    coeffs, in_box = c1_box_check(d)
    degs = c1_bound_check(d)
    chern = ch2_c2(d)
    return {
        "c1": [q(x) for x in coeffs],
        "c1_in_box": in_box,
        "C1": q(C1(d)),
        "degrees_ok": degs.ok,
        "diagnostics": list(degs.diagnostics),
        "ch2": q(chern.ch2),
        "c2": q(chern.c2),
        "C2": q(chern.bound),
        "within_C2": chern.within_C2,
    }


def _hilbert(p, opts):
    if "polynomial" in p:
        h = hilbert_coeffs([rational(x) for x in p["polynomial"]], p.get("n"))
    else:
        h = S.decode_hilbert(p)
    return dict(S.encode_hilbert(h), polynomial=[q(x) for x in hilbert_polynomial(h)])


def _slope(p, opts):
    ctx = S.decode_slope_context(p)
    spread = p.get("spread")
    mu_max, gap = slope_bounds(ctx, rational(p["mu"]), None if spread is None else rational(spread))
    return {"mu_max_bound": q(mu_max), "gap_bound": q(gap)}


def _chain(p, opts):
    delta = p.get("delta")
    cert = chain_certificate(p["slopes"], p["edges"], None if delta is None else rational(delta))
    return S.encode_chain(cert)


HANDLERS = {
    "good-check": _good_check, "bad-locus": _bad_locus, "pullback": _pullback,
    "partition": _partition, "chow": _chow, "strata": _strata, "cc": _cc,
    "ordered-partitions": _ordered, "puiseux": _puiseux, "cover": _cover, "kappa": _kappa,
    "dm": _dm, "classify": _classify, "parabolic": _parabolic, "surface": _surface,
    "hilbert": _hilbert, "slope": _slope, "chain": _chain,
}


# -- batch execution -----------------------------------------------------------------

class BatchError(Exception):
    """Schema or parse failure; ``location`` points into the job file."""

    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")


def _path(prefix, error):
    parts = [prefix]
    for p in error.absolute_path:
        parts.append(f"[{p}]" if isinstance(p, int) else f".{p}")
    return "".join(parts)


def load_jobs(data):
    """Validate a decoded job document; returns a list of normalized jobs."""
    jobs = data if isinstance(data, list) else [data]
    out = []
    for idx, job in enumerate(jobs):
        where = f"jobs[{idx}]"
        err = next(iter(jsonschema.Draft202012Validator(JOB).iter_errors(job)), None)
        if err:
            raise BatchError(_path(where, err), err.message)
        schema = SCHEMAS[job["command"]]
        err = next(iter(sorted(jsonschema.Draft202012Validator(schema).iter_errors(job["payload"]),
                               key=lambda e: list(map(str, e.absolute_path)))), None)
        if err:
            raise BatchError(_path(where + ".payload", err), err.message)
        norm = {"id": job.get("id", f"job-{idx}"), "command": job["command"], "payload": job["payload"]}
        try:
            _parse_check(norm)
        except ParseError as exc:
            raise BatchError(where + ".payload", str(exc)) from None
        except (DomainError, ResourceError):
            pass  # reported as a result when the job runs
        out.append(norm)
    return out


def _parse_check(job):
    """Decode every expression of a payload without running the computation."""
    p, cmd = job["payload"], job["command"]
    if cmd in ("good-check", "bad-locus", "pullback"):
        S.decode_value_set(p)
    elif cmd in ("puiseux", "cover"):
        S.decode_cover(p)
        for key in ("target", "fiber_at"):
            if key in p:
                rational(p[key])
    elif cmd == "kappa":
        P = S.decode_cover(p["cover"], "cover.coefficients")
        S._poly(p["a"], (P.base,), (), "a")
    elif cmd in ("dm", "classify"):
        S.decode_model(p["model"], "model.blocks")
        rational(p.get("c", 0))
    elif cmd == "parabolic":
        S.decode_parabolic(p)
    elif cmd == "surface":
        S.decode_surface(p)


def execute(job, precision=None):
    """Run one normalized job; errors in the mathematical domain become results."""
    base = {"id": job["id"], "command": job["command"]}
    try:
        result = HANDLERS[job["command"]](job["payload"], {"precision": precision})
    except DomainError as exc:
        return dict(base, status="domain-error", error=str(exc))
    except ResourceError as exc:
        return dict(base, status="resource-error", error=str(exc))
    return dict(base, status="ok", result=result)


def _execute_star(args):
    return execute(*args)


def run_jobs(jobs, precision=None, workers=1):
    """Results in input order, whatever the number of workers."""
    args = [(job, precision) for job in jobs]
    if workers <= 1 or len(jobs) <= 1:
        return [execute(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute_star, args, chunksize=1))


def emit_report(results, fmt="json"):
    if fmt == "json":
        return json.dumps({"results": results}, indent=2) + "\n"
    return format_table(results)


def _cell(v):
    if isinstance(v, str):
        return v
    return json.dumps(v, separators=(",", ":"))


def format_table(results):
    lines = []
    for r in results:
        lines.append(f"[{r['id']}] {r['command']}: {r['status']}")
        if r["status"] != "ok":
            lines.append(f"  error  {r['error']}")
            continue
        res = r["result"]
        table = res.get("table") if r["command"] == "dm" else None
        rows = [(k, _cell(v)) for k, v in res.items() if k != "table"]
        width = max((len(k) for k, _ in rows), default=0)
        lines.extend(f"  {k.ljust(width)}  {v}" for k, v in rows)
        if table:
            grid = [("level", "rank", "eigenvalues")] + [
                (e["level"], str(e["rank"]), ", ".join(x if k == 1 else f"{x} (x{k})" for x, k in e["eigenvalues"]))
                for e in table["entries"]
            ]
            widths = [max(len(row[i]) for row in grid) for i in range(3)]
            for row in grid:
                lines.append("  | " + " | ".join(c.rjust(w) for c, w in zip(row, widths)) + " |")
            for w in table["warnings"]:
                lines.append(f"  warning  {w}")
    return "\n".join(lines) + ("\n" if lines else "")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser():
    parser = argparse.ArgumentParser(prog="meroflat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a job file ('-' for stdin)")
    run.add_argument("file")
    run.add_argument("--format", choices=("json", "table"), default="json")
    run.add_argument("--precision", default=None, help="Puiseux target valuation override")
    run.add_argument("--jobs", type=int, default=1, help="worker processes")
    run.add_argument("--seed", type=int, default=0, help="accepted for symmetry with 'fixtures'")
    fx = sub.add_parser("fixtures", help="print the seeded fixture batch as a job file")
    fx.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cmd == "fixtures":
        from .fixtures import fixture_batch

        sys.stdout.write(json.dumps(fixture_batch(args.seed), indent=2) + "\n")
        return 0
    try:
        precision = None if args.precision is None else rational(args.precision)
    except ParseError as exc:
        print(f"error: --precision: {exc}", file=sys.stderr)
        return 2
    try:
        text = _read(args.file)
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: {args.file}: line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        jobs = load_jobs(data)
    except BatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    results = run_jobs(jobs, precision, args.jobs)
    sys.stdout.write(emit_report(results, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
