"""Command-line front end.

    rootforest gen bipyramid > bip.json
    rootforest charpoly bip.json
    rootforest forests bip.json --weights-seed 7
    rootforest orientations rp2.json --forest 0,1,2,... --root 0,4,9,...
    rootforest verify bip.json --all

Reports are JSON on stdout; integers that can grow (polynomial
coefficients, weighted sums) are written as decimal strings.  Exit codes:
0 success, 1 verification failure, 2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import complexes
from .complexes import Complex, ComplexError
from .forests import (DEFAULT_FACET_CAP, DEFAULT_RIDGE_CAP, CapExceeded, NotRootedForest,
                      WeightAssignment, face_subset, forest_statistics, homology_structure,
                      homology_weight, laplacian_polynomial, weighted_rooted_forest_sum)
from .orientations import (enumerate_fitting_orientations, orientation_sign,
                           strip_decomposition)
from .verify import DEFAULT_SEED, all_passed, poly_strings, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

GENERATORS = {
    "bipyramid": (0, lambda: complexes.gen_bipyramid()),
    "rp2": (0, lambda: complexes.gen_projective_plane_6()),
    "complete": (2, lambda n, d: complexes.gen_complete(n, d)),
    "hypercube": (2, lambda n, d: complexes.gen_hypercube(n, d)),
    "simplex-boundary": (1, lambda n: complexes.gen_simplex_boundary(n)),
}


class UsageError(Exception):
    pass


def summary(G: Complex) -> dict:
    return {"type": G.kind, "dimension": G.dimension, "face_counts": G.face_counts()}


def index_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")


def emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def cmd_gen(args) -> int:
    if args.kind not in GENERATORS:
        raise UsageError(f"unknown generator {args.kind!r}; choose from {', '.join(GENERATORS)}")
    arity, make = GENERATORS[args.kind]
    if len(args.params) != arity:
        raise UsageError(f"generator {args.kind} takes {arity} integer parameter(s)")
    try:
        G = make(*args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = complexes.dumps(G)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    G = complexes.load(args.file)
    p = laplacian_polynomial(G)
    emit({"command": "charpoly", "complex": summary(G), "seed": None,
          "result": {"coefficients": poly_strings(p, len(G.ridges) + 1),
                     "polynomial": str(p)}})
    return EXIT_OK


def cmd_forests(args) -> int:
    G = complexes.load(args.file)
    stats = forest_statistics(G, args.cap, args.cap)
    charpoly = laplacian_polynomial(G)
    length = len(G.ridges) + 1
    ok = stats["polynomial"] == charpoly
    result = {
        "polynomial": poly_strings(stats["polynomial"], length),
        "charpoly": poly_strings(charpoly, length),
        "rooted_forests": stats["rooted_forests"],
        "count_by_root_size": [[k, v] for k, v in stats["count_by_root_size"].items()],
        "weight_histogram": [[w, v] for w, v in stats["weight_histogram"].items()],
        "verdicts": {"rooted_forest_identity": "PASS" if ok else "FAIL"},
    }
    if args.weights_seed is not None:
        rng = random.Random(args.weights_seed)
        points = []
        for _ in range(3):
            a = WeightAssignment.random(G, rng)
            lhs, rhs = weighted_rooted_forest_sum(G, a, args.cap, args.cap)
            points.append({"lhs": str(lhs), "rhs": str(rhs),
                           "verdict": "PASS" if lhs == rhs else "FAIL"})
            ok = ok and lhs == rhs
        result["weighted_identity"] = points
    emit({"command": "forests", "complex": summary(G), "seed": args.weights_seed,
          "result": result})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orientations(args) -> int:
    G = complexes.load(args.file)
    try:
        F = face_subset(args.forest, len(G.facets), "facet")
        R = face_subset(args.root, len(G.ridges), "ridge")
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc
    weight = homology_weight(G, F, R)
    factors = homology_structure(G, F, R).invariant_factors
    orients = list(enumerate_fitting_orientations(G, F, R))
    signs = [orientation_sign(G, F, R, phi) for phi in orients]
    pairs = []
    for i, phi in enumerate(orients):
        for j, phi2 in enumerate(orients):
            strips = strip_decomposition(G, phi, phi2)
            pairs.append({
                "phi": i, "phi_prime": j,
                "fixed_points": list(strips.fixed_points),
                "cycles": [{"ridges": list(c), "oriented": o}
                           for c, o in zip(strips.cycles, strips.oriented)],
                "oriented_strips": strips.oriented_strips,
                "sign_product": signs[i] * signs[j],
                "strip_sign": strips.sign,
            })
    emit({"command": "orientations", "complex": summary(G), "seed": None,
          "result": {"facets": list(F), "root": list(R), "weight": weight,
                     "invariant_factors": list(factors),
                     "orientations": [{"pairs": [list(p) for p in phi.pairs()], "sign": s}
                                      for phi, s in zip(orients, signs)],
                     "signed_sum": sum(signs), "pairs": pairs}})
    return EXIT_OK


def cmd_verify(args) -> int:
    G = complexes.load(args.file)
    checks = run_checks(G, seed=args.seed, full=args.all, facet_cap=args.cap,
                        ridge_cap=args.cap)
    ok = all_passed(checks)
    emit({"command": "verify", "complex": summary(G), "seed": args.seed,
          "result": {"checks": [c.as_dict() for c in checks],
                     "verdict": "PASS" if ok else "FAIL"}})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootforest",
                                     description="Rooted forests of simplicial and cell complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated complex file")
    p.add_argument("kind", help="bipyramid | rp2 | complete N D | hypercube N D | simplex-boundary N")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("charpoly", help="det(L + x Id) of the top Laplacian")
    p.add_argument("file")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("forests", help="enumerate rooted forests")
    p.add_argument("file")
    p.add_argument("--weights-seed", type=int, default=None,
                   help="also check the weighted identity at 3 seeded points")
    p.add_argument("--cap", type=int, default=DEFAULT_FACET_CAP,
                   help="refuse complexes with more facets or ridges than this")
    p.set_defaults(func=cmd_forests)

    p = sub.add_parser("orientations", help="fitting orientations of one rooted forest")
    p.add_argument("file")
    p.add_argument("--forest", type=index_list, required=True, help="facet indices, e.g. 0,2,5")
    p.add_argument("--root", type=index_list, required=True, help="ridge indices")
    p.set_defaults(func=cmd_orientations)

    p = sub.add_parser("verify", help="check every identity")
    p.add_argument("file")
    p.add_argument("--all", action="store_true", help="include orientation and corollary checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int, default=DEFAULT_RIDGE_CAP)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"rootforest: refusing: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotRootedForest as exc:
        print(f"rootforest: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComplexError, UsageError, OSError) as exc:
        print(f"rootforest: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
