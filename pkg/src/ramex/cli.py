"""Command-line front end: build, certify, node-poly, oracle.

Exit codes are fixed for scripting: 0 = certificate passed, 1 = certificate
failed, 2 = usage / bad input, 3 = internal invariant violation.  All JSON
output uses exact "num/den" strings for any value that may be non-integral.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from .exact_algebra import NonzeroRemainder, UniPoly
from .exact_linalg import RationalityViolation
from .expectation_engine import node_polynomial_debug
from .matching_family import (
    Params,
    leaf_graph,
    multigraph_from_json,
    multigraph_to_json,
    node_from_json,
    node_to_json,
)
from .oracle import DEFAULT_CAP, TooLarge, brute_expected_charpoly
from .ramanujan_walk import (
    NoPassingChild,
    NotRegular,
    certificate_to_json,
    certify,
    walk,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _poly_strings(poly: UniPoly) -> list[str]:
    return [str(Fraction(c)) for c in poly.coeffs]


def _poly_sha256(poly: UniPoly) -> str:
    blob = ",".join(str(Fraction(c)) for c in poly.coeffs).encode()
    return hashlib.sha256(blob).hexdigest()


def _write_json(path: str, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def _load_params(args) -> Params:
    try:
        return Params(args.n, args.d)
    except ValueError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _read_node_argument(text: str):
    """A node argument is inline JSON, or a path to a JSON file."""
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


def cmd_build(args) -> int:
    params = _load_params(args)
    started = time.monotonic()
    try:
        result = walk(params, jobs=args.jobs, canonical_first=args.canonical_first_matching)
        graph = leaf_graph(result.leaf, params)
        cert = certify(graph)
    except NoPassingChild as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        _dump_failed_walk(args.out, exc)
        return EXIT_INTERNAL
    except (RationalityViolation, NonzeroRemainder, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    elapsed = time.monotonic() - started

    os.makedirs(args.out, exist_ok=True)
    graph_path = os.path.join(args.out, "graph.json")
    cert_path = os.path.join(args.out, "certificate.json")
    _write_json(graph_path, multigraph_to_json(graph))
    _write_json(cert_path, certificate_to_json(cert))
    if args.trace:
        _write_json(
            os.path.join(args.out, "transcript.json"),
            _transcript_json(result, cert, args, elapsed),
        )
    status = "passed" if cert.passed else "FAILED"
    print(
        f"built n={params.n} d={params.d}: certificate {status} "
        f"(q={cert.bound_q}), wrote {graph_path} and {cert_path}"
    )
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _transcript_json(result, cert, args, elapsed: float) -> dict:
    return {
        "params": {"n": result.params.n, "d": result.params.d},
        "q": result.bound_q,
        "canonical_first_matching": bool(args.canonical_first_matching),
        "jobs": args.jobs,
        "stages": [
            {
                "node": node_to_json(stage.node),
                "node_poly_sha256": _poly_sha256(stage.node_poly),
                "children": [
                    {
                        "node": node_to_json(child),
                        "poly_sha256": _poly_sha256(poly),
                        "passed": ok,
                    }
                    for child, poly, ok in zip(
                        stage.child_nodes, stage.child_polys, stage.child_passed
                    )
                ],
                "chosen": stage.chosen,
            }
            for stage in result.stages
        ],
        "leaf": node_to_json(result.leaf),
        "elapsed_ms": int(elapsed * 1000),  # integral: output files carry no floats
        "certificate": certificate_to_json(cert),
    }


def _dump_failed_walk(out_dir: str, exc: NoPassingChild) -> None:
    try:
        os.makedirs(out_dir, exist_ok=True)
        data = {
            "error": str(exc),
            "node": node_to_json(exc.node) if exc.node is not None else None,
            "children": [
                {"node": node_to_json(c), "poly": _poly_strings(p)}
                for c, p in zip(exc.child_nodes, exc.child_polys)
            ],
        }
        _write_json(os.path.join(out_dir, "failure.json"), data)
    except OSError:
        pass


def cmd_certify(args) -> int:
    try:
        with open(args.graph) as fh:
            data = json.load(fh)
        graph = multigraph_from_json(data)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _usage_error(f"cannot read multigraph: {exc}")
    try:
        cert = certify(graph)
    except NotRegular as exc:
        return _usage_error(str(exc))
    print(json.dumps(certificate_to_json(cert), indent=2))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_node_poly(args) -> int:
    params = _load_params(args)
    try:
        node = node_from_json(_read_node_argument(args.node), params)
    except (ValueError, json.JSONDecodeError) as exc:
        return _usage_error(f"malformed node: {exc}")
    try:
        npoly, tensor = node_polynomial_debug(node, params)
    except (RationalityViolation, NonzeroRemainder, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.ctensor:
        payload = {
            "node_poly": _poly_strings(npoly.poly),
            "ctensor": tensor.to_json() if tensor is not None else None,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(json.dumps(_poly_strings(npoly.poly)))
    return EXIT_PASS


def cmd_oracle(args) -> int:
    params = _load_params(args)
    try:
        node = node_from_json(_read_node_argument(args.node), params)
    except (ValueError, json.JSONDecodeError) as exc:
        return _usage_error(f"malformed node: {exc}")
    try:
        poly = brute_expected_charpoly(node, params, cap=args.oracle_cap)
    except TooLarge as exc:
        return _usage_error(str(exc))
    print(json.dumps(_poly_strings(poly)))
    return EXIT_PASS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramex",
        description=(
            "Deterministically construct and exactly certify d-regular "
            "bipartite Ramanujan multigraphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="walk the matching tree and emit a certified graph")
    p_build.add_argument("--n", type=int, required=True, help="total vertex count (even)")
    p_build.add_argument("--d", type=int, required=True, help="degree")
    p_build.add_argument("--out", default=".", help="output directory")
    p_build.add_argument("--trace", action="store_true", help="also write transcript.json")
    p_build.add_argument(
        "--canonical-first-matching",
        action="store_true",
        help="pin the first matching to the identity (relabeling symmetry)",
    )
    p_build.add_argument("--jobs", type=int, default=1, help="worker processes for child evaluation")
    p_build.set_defaults(func=cmd_build)

    p_cert = sub.add_parser("certify", help="certify a multigraph JSON file")
    p_cert.add_argument("graph", help="path to multigraph JSON")
    p_cert.set_defaults(func=cmd_certify)

    p_np = sub.add_parser("node-poly", help="print a node's exact polynomial")
    p_np.add_argument("node", help="node JSON (inline or a file path)")
    p_np.add_argument("--n", type=int, required=True)
    p_np.add_argument("--d", type=int, required=True)
    p_np.add_argument("--ctensor", action="store_true", help="include the squared-minor tensor")
    p_np.set_defaults(func=cmd_node_poly)

    p_or = sub.add_parser("oracle", help="brute-force a node's expected adjacency polynomial")
    p_or.add_argument("node", help="node JSON (inline or a file path)")
    p_or.add_argument("--n", type=int, required=True)
    p_or.add_argument("--d", type=int, required=True)
    p_or.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    p_or.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
