"""Command-line front end.

Polytopes travel as JSON documents ``{"name", "ambient_dim", "points"}`` on
stdin/stdout, so commands compose with pipes::

    latdeg generate prism --heights 3,2 | latdeg hstar

Results go to stdout as JSON, diagnostics to stderr. Exit status is 0 on
success, 1 when a computational cap is hit and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import acceptance, adet
from .classify import classify
from .construct import basic_simplex, cayley, dilate, exceptional_simplex, lawrence_prism, pyramid, scramble
from .ehrhart import degree_via_interior, hstar
from .hull import HullCapError
from .polytope import LatticePolytope
from .triang import (MAX_ENUM_POINTS, CapExceeded, PointConfig, enumerate_all, flip_graph, is_connected,
                     secondary_polytope)

MAX_EXPANDED_TERMS = 200_000


class InputError(ValueError):
    """The input document does not match the polytope schema."""


def _parse_document(doc) -> LatticePolytope:
    if not isinstance(doc, dict) or "points" not in doc:
        raise InputError("expected an object with a 'points' list")
    points = doc["points"]
    if not isinstance(points, list) or not points:
        raise InputError("'points' must be a non-empty list")
    if not all(isinstance(p, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in p)
               for p in points):
        raise InputError("points must be lists of integers")
    dim = doc.get("ambient_dim", len(points[0]))
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InputError("'ambient_dim' must be a non-negative integer")
    if any(len(p) != dim for p in points):
        raise InputError(f"every point must have {dim} coordinates")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    return LatticePolytope(points, dim, name=name)


def read_document(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _read_text(source: Optional[str]) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        with open(source) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def read_polytope(source: Optional[str] = None) -> LatticePolytope:
    """Read a polytope document from a file path, or stdin when ``source`` is None or '-'."""
    return _parse_document(read_document(_read_text(source)))


def polytope_document(p: LatticePolytope) -> dict:
    doc = {}
    if p.name:
        doc["name"] = p.name
    doc["ambient_dim"] = p.ambient_dim
    doc["points"] = [list(g) for g in p.generators]
    return doc


def write_polytope(p: LatticePolytope) -> str:
    """Canonical JSON: points sorted and deduplicated."""
    return json.dumps(polytope_document(p), separators=(",", ":"))


def _heights(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad heights {text!r}") from exc


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _cmd_info(args) -> int:
    p = read_polytope(args.input)
    _emit({"name": p.name, "ambient_dim": p.ambient_dim, "dim": p.dim,
           "vertices": [list(v) for v in p.vertices],
           "lattice_points": [list(x) for x in p.lattice_points(1)]})
    return 0


def _cmd_hstar(args) -> int:
    _emit({"hstar": hstar(read_polytope(args.input)).trimmed()})
    return 0


def _cmd_degree(args) -> int:
    p = read_polytope(args.input)
    a, b = hstar(p).degree, degree_via_interior(p)
    _emit({"degree": a, "degree_via_interior": b, "agree": a == b})
    return 0


def _cmd_classify(args) -> int:
    _emit(classify(read_polytope(args.input)).to_dict())
    return 0


def _config(args) -> PointConfig:
    cfg = PointConfig(read_polytope(args.input))
    if len(cfg) > args.max_points:
        raise CapExceeded(f"{len(cfg)} lattice points exceed the cap of {args.max_points}")
    return cfg


def _cmd_triangulations(args) -> int:
    cfg = _config(args)
    ts = enumerate_all(cfg, args.max_points)
    if args.mode == "count":
        _emit({"count": len(ts)})
    elif args.mode == "list":
        _emit({"points": [list(x) for x in cfg.points], "count": len(ts),
               "triangulations": [t.to_dict() for t in ts]})
    else:
        _, edges = flip_graph(cfg, ts)
        _emit({"vertices": len(ts), "edges": [list(e) for e in sorted(edges)],
               "connected": is_connected(len(ts), edges)})
    return 0


def _cmd_secondary(args) -> int:
    cfg = _config(args)
    _emit(secondary_polytope(cfg, enumerate_all(cfg, args.max_points)).to_dict())
    return 0


def _cmd_adet(args) -> int:
    if args.verify_example:
        report = adet.worked_example_report()
        _emit(report.to_dict())
        return 0
    if not args.heights:
        raise InputError("adet needs --heights or --verify-example")
    product = adet.principal_adet_prism(_heights(args.heights))
    size = 1
    for f in product.factors:
        size *= len(f.terms)
    if size > MAX_EXPANDED_TERMS:
        raise CapExceeded(f"expansion could reach {size} terms (cap {MAX_EXPANDED_TERMS})")
    for line in product.expand().lines():
        print(line)
    return 0


def _cmd_generate(args) -> int:
    kind = args.kind
    if kind == "prism":
        if not args.heights:
            raise InputError("prism needs --heights")
        p = lawrence_prism(_heights(args.heights))
    elif kind == "exceptional":
        p = exceptional_simplex(args.n if args.n is not None else 2)
    elif kind == "basic":
        p = basic_simplex(args.n if args.n is not None else 2)
    elif kind == "cayley":
        doc = read_document(_read_text(args.input))
        docs = doc.get("polytopes") if isinstance(doc, dict) else doc
        if not isinstance(docs, list) or not docs:
            raise InputError("cayley expects a list of polytope documents")
        p = cayley([_parse_document(d) for d in docs])
    elif kind == "pyramid":
        p = pyramid(read_polytope(args.input), args.r if args.r is not None else 1)
    elif kind == "dilate":
        p = dilate(read_polytope(args.input), args.k if args.k is not None else 2)
    else:
        p, m = scramble(read_polytope(args.input), args.seed)
        print(json.dumps({"map": m.to_dict()}), file=sys.stderr)
    print(write_polytope(p))
    return 0


def _cmd_check(args) -> int:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    if only and any(k not in acceptance.CRITERIA for k in only):
        raise InputError(f"unknown criterion in {args.only!r}")
    results = acceptance.run(only)
    for r in results:
        print(f"{r.line()} ({r.seconds:.1f}s)", file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit({"passed": ok, "criteria": {str(r.number): r.passed for r in results}})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=None, help="polytope JSON file (default: stdin)")
    common.add_argument("--heights", default=None, help="comma separated heights, e.g. 3,2")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--r", type=int, default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-points", type=int, default=MAX_ENUM_POINTS, dest="max_points")

    parser = argparse.ArgumentParser(prog="latdeg", description="Lattice polytopes of degree at most one.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common]).set_defaults(func=_cmd_info)
    sub.add_parser("hstar", parents=[common]).set_defaults(func=_cmd_hstar)
    sub.add_parser("degree", parents=[common]).set_defaults(func=_cmd_degree)
    sub.add_parser("classify", parents=[common]).set_defaults(func=_cmd_classify)
    t = sub.add_parser("triangulations", parents=[common])
    t.add_argument("mode", choices=["count", "list", "flipgraph"])
    t.set_defaults(func=_cmd_triangulations)
    sub.add_parser("secondary", parents=[common]).set_defaults(func=_cmd_secondary)
    a = sub.add_parser("adet", parents=[common])
    a.add_argument("--verify-example", action="store_true", dest="verify_example")
    a.set_defaults(func=_cmd_adet)
    g = sub.add_parser("generate", parents=[common])
    g.add_argument("kind", choices=["prism", "exceptional", "basic", "cayley", "pyramid", "dilate", "scramble"])
    g.set_defaults(func=_cmd_generate)
    c = sub.add_parser("check", parents=[common])
    c.add_argument("suite", choices=["paper-suite"])
    c.add_argument("--only", default=None, help="comma separated criterion numbers")
    c.set_defaults(func=_cmd_check)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code:
            print("{}")
            return 2
        return 0
    try:
        return args.func(args)
    except (HullCapError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("{}")
        return 1
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("{}")
        return 2


def main() -> None:
    sys.exit(run())
