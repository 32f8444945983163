"""Emit seeded random instances as JSON, ready to feed to the CLI.

    python3 -m fiberorder.testdata --kind lift --seed 7 --count 20 > lifts.json
"""

import argparse
import json
import sys

from .generators import (
    random_connected_poset,
    random_lift_instance,
    random_surjection_case,
    rng_for,
)
from .order import poset_to_json
from .rational import format_rational as _q

KINDS = ("lift", "lift-infeasible", "image", "poset", "compare")


def lift_json(inst):
    return {
        "n": inst.n,
        "c": [_q(x) for x in inst.c],
        "alpha": [{"A": list(A), "value": _q(v)} for A, v in sorted(inst.alpha.items())],
    }


def image_json(s, U, c, lam):
    return {
        "K": list(s.K),
        "L": list(s.L),
        "g": {x: s.g[x] for x in s.K},
        "U": [sorted(u) for u in U],
        "c": [_q(x) for x in c],
        "lambda": {y: _q(v) for y, v in sorted(lam.items())},
    }


def generate(kind, seed, count, k=2):
    rng = rng_for(seed)
    out = []
    for _ in range(count):
        if kind == "lift":
            out.append(lift_json(random_lift_instance(rng, feasible=True)))
        elif kind == "lift-infeasible":
            out.append(lift_json(random_lift_instance(rng, feasible=False)))
        elif kind == "image":
            out.append(image_json(*random_surjection_case(rng)))
        elif kind == "poset":
            out.append(poset_to_json(random_connected_poset(rng), covers_only=True))
        elif kind == "compare":
            from .generators import random_measure

            pts = [random_measure(rng, range(1 << k)) for _ in range(2)]
            out.append({name: [_q(p.get(i, 0)) for i in range(1 << k)] for name, p in zip("ts", pts)})
        else:
            raise ValueError(f"unknown kind {kind!r}")
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fiberorder-testdata", description=__doc__.splitlines()[0])
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--k", type=int, default=2, help="dimension for --kind compare")
    opts = parser.parse_args(argv)
    json.dump(generate(opts.kind, opts.seed, opts.count, opts.k), sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
