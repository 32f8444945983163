"""Command-line front end: JSON in, JSON / DOT / text out.

Exit status is 0 on success, 1 on a domain error (payload on stderr) and 2
on malformed input.  Every result goes through the library's validators
before it is printed.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from .dominance import (
    MAX_UPSET_K,
    OkPoint,
    PkPoint,
    enumerate_upsets,
    mask_subset,
    ok_compare,
    pk_compare,
    pk_compare_flow,
    pk_coupling,
)
from .errors import FiberOrderError, InternalContradiction, InvalidPoint
from .factorization import irreducible_factorization
from .fibers import (
    BallPoint,
    SigmaMap,
    StarMap,
    ball_order_descriptor,
    fiber_order_poset,
)
from .flow import FlowNetwork, check_flow, max_flow
from .lifting import (
    DiscreteSurjection,
    LiftInstance,
    construct_witness,
    image_membership,
    validate_lift,
    validate_witness,
    solve_lift,
)
from .order import label_str, poset_from_json, poset_to_json, product, to_dot
from .rational import as_rational, format_rational

__all__ = ["main", "run"]

SUBCOMMANDS = ("factor", "compare", "upsets", "lift", "image", "fiber", "flow")


class Malformed(Exception):
    """Input that does not fit the subcommand's schema."""


class DotUnavailable(Exception):
    pass


def _q(x):
    return format_rational(x)


def _sorted_subset(S):
    return sorted(S)


# handlers: each takes one parsed instance plus options and returns a dict


def handle_factor(data, opts):
    P = poset_from_json(data)
    fact = irreducible_factorization(P)
    # revalidate: the witness must be an isomorphism onto the input
    prod = product(list(fact.factors))
    for a in prod.elements:
        for b in prod.elements:
            if prod.le(a, b) != P.le(fact.witness[a], fact.witness[b]):
                raise InternalContradiction("factorisation witness is not order-preserving")
    return {
        "factors": [poset_to_json(F, covers_only=True) for F in fact.factors],
        "witness": [[label_str(a), label_str(fact.witness[a])] for a in prod.elements],
        "_posets": list(fact.factors),
    }


def _point(space, k, raw, m):
    if not isinstance(raw, list):
        raise Malformed("points are arrays of rationals")
    if m is not None:
        for v in raw:
            if (as_rational(v) * m).denominator != 1:
                raise InvalidPoint(f"{v} is not a multiple of 1/{m}")
    if space == "ok":
        p = OkPoint(tuple(raw))
        if p.k != k:
            raise InvalidPoint(f"expected {k} coordinates, got {p.k}")
        return p
    return PkPoint(k, tuple(raw))


def handle_compare(data, opts):
    t = _point(opts.space, opts.k, data["t"], opts.m)
    s = _point(opts.space, opts.k, data["s"], opts.m)
    out = {"space": opts.space, "k": opts.k}
    if opts.space == "ok":
        out["verdict"] = ok_compare(t, s).value
        return out
    by_flow = pk_compare_flow(t, s)
    comparators = {"coupling": by_flow.value}
    if opts.k <= MAX_UPSET_K:
        by_upsets = pk_compare(t, s)
        comparators["upsets"] = by_upsets.value
        if by_upsets != by_flow:
            raise InternalContradiction(f"comparators disagree: {by_upsets.value} vs {by_flow.value}")
    out["verdict"] = by_flow.value
    out["comparators"] = comparators
    if by_flow.is_le:
        gamma = pk_coupling(t, s)
        rows = [Fraction(0)] * (1 << opts.k)
        cols = [Fraction(0)] * (1 << opts.k)
        for (A, B), v in gamma.items():
            if A & B != A:
                raise InternalContradiction("coupling moves mass downward")
            rows[A] += v
            cols[B] += v
        if tuple(rows) != t.masses or tuple(cols) != s.masses:
            raise InternalContradiction("coupling marginals are wrong")
        out["coupling"] = [
            {"from": _sorted_subset(mask_subset(A)), "to": _sorted_subset(mask_subset(B)), "mass": _q(v)}
            for (A, B), v in sorted(gamma.items())
        ]
    return out


def handle_upsets(_data, opts):
    fams = enumerate_upsets(opts.k)
    return {
        "k": opts.k,
        "count": len(fams),
        "families": [
            {
                "minimal": sorted(_sorted_subset(mask_subset(S)) for S in F.minimal),
                "members": sorted(_sorted_subset(S) for S in F.members()),
            }
            for F in fams
        ],
    }


def _subset_key(raw):
    if isinstance(raw, list):
        return tuple(int(i) for i in raw)
    if isinstance(raw, str):
        body = raw.strip().strip("{}[]()")
        return tuple(int(i) for i in body.split(",") if i.strip())
    raise Malformed(f"cannot read a subset from {raw!r}")


def parse_lift(data):
    alpha_raw = data.get("alpha", [])
    if isinstance(alpha_raw, dict):
        alpha = {_subset_key(k): v for k, v in alpha_raw.items()}
    else:
        alpha = {_subset_key(e["A"]): e["value"] for e in alpha_raw}
    return LiftInstance(int(data["n"]), tuple(data["c"]), alpha)


def handle_lift(data, opts):
    inst = parse_lift(data)
    sol = solve_lift(inst)
    validate_lift(inst, sol)
    if sol.flow_value != sol.cut_capacity:
        raise InternalContradiction("flow value differs from cut capacity")
    return {
        "n": inst.n,
        "beta": [
            {"A": list(A), "i": i, "value": _q(v)} for (A, i), v in sorted(sol.beta.items())
        ],
        "received": [_q(sol.row_sum(i)) for i in range(1, inst.n + 1)],
        "flow_value": _q(sol.flow_value),
        "cut_capacity": _q(sol.cut_capacity),
    }


def parse_image(data):
    s = DiscreteSurjection(tuple(data["K"]), tuple(data["L"]), dict(data["g"]))
    U = [set(u) for u in data.get("U", [])]
    c = [as_rational(x) for x in data.get("c", [])]
    lam = {y: as_rational(v) for y, v in data["lambda"].items()}
    return s, U, c, lam


def handle_image(data, opts):
    s, U, c, lam = parse_image(data)
    member = image_membership(s, U, c, lam)
    out = {"member": member}
    if member:
        nu = construct_witness(s, U, c, lam)
        validate_witness(s, U, c, lam, nu)
        out["witness"] = {label_str(x): _q(nu[x]) for x in s.K}
    return out


def _star_from(params):
    star = StarMap(tuple(params["K"]), tuple(params["L"]), dict(params["g"]), params["varpi"], params["m"])
    return star.power(int(params.get("power", 1)))


def handle_fiber(data, opts):
    params, base = data["params"], data.get("base")
    m = opts.m if opts.m is not None else 2
    if opts.family == "ball":
        pts = [BallPoint(p["coordinates"], frozenset(p.get("tail", ()))) for p in params["points"]]
        r, grid = ball_order_descriptor(pts, m)
        return {"family": "ball", "r": r, "poset": poset_to_json(grid, covers_only=True), "_posets": [grid]}
    if opts.family == "sigma":
        model = SigmaMap(frozenset(params["M"]), frozenset(params["N"]), int(params["n"]))
        base = frozenset(base)
    else:
        model = _star_from(params)
        base = tuple(base)
    fiber = model.fiber(base)
    P = fiber_order_poset(model, base, m)
    return {
        "family": opts.family,
        "base": label_str(base),
        "fiber": [label_str(z) for z in fiber],
        "m": m,
        "poset": poset_to_json(P, covers_only=True),
        "_posets": [P],
    }


def parse_network(data):
    arcs = [(u, v, as_rational(c)) for u, v, c in data["arcs"]]
    return FlowNetwork(data["vertices"], arcs, data["source"], data["sink"])


def handle_flow(data, opts):
    net = parse_network(data)
    res = max_flow(net)
    value = check_flow(net, res.flow)
    if value != res.value or net.cut_capacity(res.cut) != res.value:
        raise InternalContradiction("max-flow value and min-cut capacity differ")
    order = {v: k for k, v in enumerate(net.vertices)}
    arcs = sorted(res.flow.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))
    return {
        "value": _q(res.value),
        "flow": [[label_str(u), label_str(v), _q(f)] for (u, v), f in arcs],
        "min_cut": {
            "capacity": _q(res.cut_capacity),
            "source_side": [label_str(v) for v in net.vertices if v in res.cut],
        },
    }


HANDLERS = {
    "factor": handle_factor,
    "compare": handle_compare,
    "upsets": handle_upsets,
    "lift": handle_lift,
    "image": handle_image,
    "fiber": handle_fiber,
    "flow": handle_flow,
}

BATCH_TYPES = {"factor", "compare", "lift", "image", "fiber", "flow"}


def _run_one(name, opts, data):
    """Worker: returns ``("ok", result)``, ``("domain", payload)`` or ``("malformed", message)``."""
    try:
        return ("ok", HANDLERS[name](data, opts))
    except FiberOrderError as exc:
        return ("domain", exc.payload())
    except (KeyError, TypeError, ValueError, AttributeError, Malformed, ZeroDivisionError) as exc:
        return ("malformed", f"{type(exc).__name__}: {exc}")


def _public(result):
    return {k: v for k, v in result.items() if not k.startswith("_")}


def _text(name, result):
    if name == "upsets":
        lines = [f"k={result['k']} count={result['count']}"]
        lines += [" ".join("{" + ",".join(map(str, S)) + "}" for S in f["minimal"]) or "(empty)" for f in result["families"]]
        return "\n".join(lines)
    if name == "compare":
        return result["verdict"]
    if name == "flow":
        return f"value {result['value']}, min cut {result['min_cut']['capacity']}"
    if name == "lift":
        return "\n".join(f"beta[{e['A']}, {e['i']}] = {e['value']}" for e in result["beta"])
    if name == "image":
        if not result["member"]:
            return "not in image"
        return "in image; witness " + ", ".join(f"{x}:{v}" for x, v in result["witness"].items())
    if name == "factor":
        return "\n".join(
            f"factor {i}: {len(F['elements'])} elements, {len(F['le'])} covers" for i, F in enumerate(result["factors"])
        ) or "trivial (one element)"
    if name == "fiber":
        if result["family"] == "ball":
            return f"r={result['r']}"
        return f"{len(result['fiber'])} fiber points, {len(result['poset']['elements'])} grid classes"
    return json.dumps(_public(result))


def _dot(name, result):
    posets = result.get("_posets")
    if not posets:
        raise DotUnavailable(f"'{name}' has no order diagram to export")
    return "".join(to_dot(P, name=f"{name}_{i}") for i, P in enumerate(posets))


def _render(name, fmt, result):
    if fmt == "json":
        return json.dumps(_public(result), indent=2) + "\n"
    if fmt == "dot":
        return _dot(name, result)
    return _text(name, result) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(prog="fiberorder", description="Exact tools for fiber orders and finite posets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, takes_input=True):
        p.add_argument("--format", choices=("json", "dot", "text"), default="json")
        if takes_input:
            p.add_argument("--json", dest="input", metavar="PATH", default=None, help="input file ('-' for stdin)")
            p.add_argument("input_pos", nargs="?", metavar="INPUT", help="input file (alternative to --json)")
            p.add_argument("--jobs", type=int, default=1, help="worker processes for batch (array) input")
        return p

    common(sub.add_parser("factor", help="irreducible product factorisation of a connected poset"))
    p = common(sub.add_parser("compare", help="compare two points of O_k or P_k"))
    p.add_argument("--space", choices=("pk", "ok"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="require coordinates on the 1/m grid")
    p = common(sub.add_parser("upsets", help="list up-sets of the Boolean lattice 2^k"), takes_input=False)
    p.add_argument("--k", type=int, required=True)
    common(sub.add_parser("lift", help="split masses to beat thresholds (max-flow)"))
    common(sub.add_parser("image", help="image membership and witness measure"))
    p = common(sub.add_parser("fiber", help="discretised fiber order of a model map"))
    p.add_argument("--family", choices=("sigma", "star", "ball"), required=True)
    p.add_argument("--params", default=None, help="JSON object (or @file) with the model parameters")
    p.add_argument("--base", default=None, help="JSON base point")
    p.add_argument("--m", type=int, default=None, help="grid denominator (default 2)")
    common(sub.add_parser("flow", help="exact max-flow / min-cut"))
    return parser


def _read_json_arg(text):
    if text is None:
        return None
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _load_input(opts):
    if opts.command == "upsets":
        return None
    if opts.command == "fiber" and opts.params is not None:
        return {"params": _read_json_arg(opts.params), "base": _read_json_arg(opts.base)}
    path = opts.input or opts.input_pos or "-"
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def run(argv=None, stdout=None, stderr=None):
    """Execute one CLI invocation; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data = _load_input(opts)
    except (OSError, json.JSONDecodeError) as exc:
        stderr.write(json.dumps({"error": "malformed_input", "message": str(exc)}) + "\n")
        return 2

    name = opts.command
    batch = name in BATCH_TYPES and isinstance(data, list)
    items = data if batch else [data]
    worker = partial(_run_one, name, opts)
    jobs = getattr(opts, "jobs", 1)
    if batch and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(worker, items))
    else:
        outcomes = [worker(item) for item in items]

    status = 0
    for kind, payload in outcomes:
        if kind == "malformed":
            stderr.write(json.dumps({"error": "malformed_input", "message": payload}) + "\n")
            status = 2
        elif kind == "domain":
            stderr.write(json.dumps(payload) + "\n")
            status = max(status, 1)
    if status == 2:
        return 2

    try:
        if batch:
            if opts.format == "json":
                body = [_public(p) if k == "ok" else p for k, p in outcomes]
                stdout.write(json.dumps(body, indent=2) + "\n")
            else:
                for kind, payload in outcomes:
                    if kind == "ok":
                        stdout.write(_render(name, opts.format, payload))
        elif outcomes[0][0] == "ok":
            stdout.write(_render(name, opts.format, outcomes[0][1]))
    except DotUnavailable as exc:
        stderr.write(json.dumps({"error": "malformed_input", "message": str(exc)}) + "\n")
        return 2
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
