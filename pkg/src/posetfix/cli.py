"""Command-line front end: ``posetfix <subcommand> ...`` or ``python -m posetfix``.

Exit codes: 0 success; 2 when ``--strict`` is given and the decided property
is false; 64 usage error; 65 malformed input; 66 missing file; 69 a size
bound was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import interval
from .catalog import SCAN_MAX_MAPS, Cache, default_cache_dir, scan, summarize
from .dismantle import core, find_retraction
from .errors import PosetfixError, SizeLimit
from .fpp import has_fpp
from .io import parse_poset
from .mapspace import ENUM_MAX_MAPS, enumerate_maps
from .selection import SelectionMap, find_selection_map, verify_selection

EXIT_FALSE = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66
EXIT_SIZE = 69


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _point(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(part) for part in text.split(","))


def _emit(args, data: dict, human: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_poset(text)


def cmd_check(args) -> int:
    P = _load(args.file)
    report = has_fpp(P)
    universal: bool | str
    try:
        universal = isinstance(find_selection_map(P, max_maps=args.max_maps), SelectionMap)
    except SizeLimit:
        universal = "skipped(size)"
    data = report.to_json()
    data["universal"] = universal
    witness = "" if report.witness is None else f"\nfixed-point-free map: {list(report.witness.image)}"
    _emit(args, data, f"fixed point property: {report.holds}{witness}\nuniversal (selection map): {universal}\nsearch nodes: {report.nodes}")
    return EXIT_FALSE if args.strict and not report.holds else 0


def cmd_selection(args) -> int:
    P = _load(args.file)
    result = find_selection_map(P, max_maps=args.max_maps)
    data = result.to_json()
    if isinstance(result, SelectionMap):
        ok, violation = verify_selection(P, result)
        data["verified"] = ok
        human = f"selection map found over {len(result.mapspace)} maps; verified: {ok}"
        if violation is not None:
            human += f" ({violation})"
        if args.verbose:
            human += "\n" + "\n".join(
                f"{k}: {list(m)} -> {P.label(c)}" for k, (m, c) in enumerate(zip(result.mapspace.maps, result.choice)))
    else:
        human = f"no selection map ({result.reason})"
        if result.witness is not None:
            human += f"; map without fixed point: {list(result.witness.image)}"
    _emit(args, data, human)
    return EXIT_FALSE if args.strict and not data["sat"] else 0


def cmd_core(args) -> int:
    P = _load(args.file)
    report = core(P)
    seq = ", ".join(f"{P.label(x)} ({kind})" for x, kind in report.removal_sequence) or "none"
    human = (f"dismantlable: {report.dismantlable}\nremoved: {seq}\n"
             f"core: {[P.label(x) for x in report.core_elements]}")
    _emit(args, report.to_json(), human)
    return EXIT_FALSE if args.strict and not report.dismantlable else 0


def cmd_maps(args) -> int:
    P = _load(args.file)
    M = enumerate_maps(P, P, args.max_maps)
    data = {"count": len(M)}
    human = f"{len(M)} monotone self-maps"
    if not args.count_only:
        data["maps"] = [list(m) for m in M.maps]
        human += "\n" + "\n".join(f"{k}: {list(m)}" for k, m in enumerate(M.maps))
    _emit(args, data, human)
    return 0


def cmd_retract(args) -> int:
    Y = _load(args.yfile)
    X = _load(args.xfile)
    found = find_retraction(Y, X)
    if found is None:
        data = {"retract": False, "s": None, "r": None}
        human = "X is not a retract of Y"
    else:
        s, r = found
        data = {"retract": True, "s": list(s.image), "r": list(r.image)}
        human = f"s: X -> Y = {list(s.image)}\nr: Y -> X = {list(r.image)}"
    _emit(args, data, human)
    return EXIT_FALSE if args.strict and found is None else 0


def cmd_scan(args) -> int:
    cache_dir = args.cache or default_cache_dir()
    cache = Cache(cache_dir) if cache_dir else None
    stats = {}
    records = []
    for rec in scan(args.max_n, jobs=args.jobs, cache=cache, max_maps=args.max_maps, stats=stats):
        records.append(rec)
        if args.json:
            print(json.dumps(rec.to_json(), sort_keys=True))
        else:
            print(f"n={rec.n} {rec.canonical} connected={rec.connected} fpp={rec.fpp} "
                  f"dismantlable={rec.dismantlable} selection={rec.selection} maps={rec.map_count}")
    summary = summarize(records)
    if args.json:
        print(json.dumps({"summary": {str(k): v for k, v in summary.items()}, "computed": stats["computed"]}, sort_keys=True))
    else:
        for n, counts in summary.items():
            print(f"# n={n}: " + " ".join(f"{k}={v}" for k, v in counts.items()))
    return 0


def cmd_demo(args) -> int:
    fmt = interval.fmt
    if args.demo == "interval":
        fix = interval.fixed_point_set(args.t)
        left, right = interval.no_selection_certificate()
        data = {"t": fmt(args.t), "fixed_points": [[fmt(a), fmt(b)] for a, b in fix.intervals],
                "left_limit": fmt(left), "right_limit": fmt(right)}
        human = f"Fix(f_{fmt(args.t)}) = {fix}\nunique fixed point for t<1: {fmt(left)}, for t>1: {fmt(right)}"
    elif args.demo == "retraction":
        out, err = interval.radial_retraction(args.x, outside=args.outside, with_error=True)
        data = {"x": [fmt(c) for c in args.x], "r": [fmt(c) for c in out], "error_bound": fmt(err)}
        human = f"r({', '.join(map(fmt, args.x))}) = ({', '.join(map(fmt, out))})"
        if err:
            human += f"  [per-coordinate error <= {float(err):.3g}]"
    else:
        K, c, eps = args.k, args.c, args.eps
        if c is None:
            c = (1 - K) / 2
        f = interval.PiecewiseLinear.affine(K, c)
        g = interval.PiecewiseLinear.affine(K, c + eps)
        p = interval.banach_fixed_point(f, K)
        iterates = interval.banach_iterate(f, 0, args.steps)
        lhs, rhs = interval.banach_stability_gap(f, g, K)
        data = {"K": fmt(K), "fixed_point": fmt(p), "iterates": [fmt(v) for v in iterates],
                "gap": fmt(lhs), "bound": fmt(rhs)}
        human = (f"f(x) = {fmt(K)}x + {fmt(c)} has fixed point {fmt(p)}\n"
                 f"iterates from 0: {', '.join(f'{float(v):.6f}' for v in iterates)}\n"
                 f"perturbed by {fmt(eps)}: |p(f)-p(g)| = {fmt(lhs)} <= {fmt(rhs)}")
    _emit(args, data, human)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="posetfix", description="Fixed point properties of finite posets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, strict=True, maps=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if strict:
            p.add_argument("--strict", action="store_true", help="exit with status 2 when the answer is false")
        if maps:
            p.add_argument("--max-maps", type=int, default=ENUM_MAX_MAPS, help="bound on |C(X,X)|")

    p = sub.add_parser("check", help="fixed point property and universal fixed point property")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("selection", help="search for a selection map")
    p.add_argument("file")
    p.add_argument("-v", "--verbose", action="store_true", help="print the whole choice table")
    common(p)
    p.set_defaults(func=cmd_selection)

    p = sub.add_parser("core", help="beat-point removal and dismantlability")
    p.add_argument("file")
    common(p, maps=False)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("maps", help="enumerate monotone self-maps")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    common(p, strict=False)
    p.set_defaults(func=cmd_maps)

    p = sub.add_parser("retract", help="is XFILE a retract of YFILE?")
    p.add_argument("yfile")
    p.add_argument("xfile")
    common(p, maps=False)
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("scan", help="classify all posets up to isomorphism")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--cache", default=None, help="cache directory (default: $FIXPOINT_CACHE)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-maps", type=int, default=SCAN_MAX_MAPS)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("demo", help="exact interval examples")
    demos = p.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    d = demos.add_parser("interval", help="fixed points of the jumping family f_t")
    d.add_argument("--t", type=_rational, required=True)
    d.add_argument("--json", action="store_true")
    d = demos.add_parser("retraction", help="radial retraction onto the unit ball")
    d.add_argument("--x", type=_point, required=True, help="comma-separated rationals, 1 to 3 coordinates")
    d.add_argument("--outside", action="store_true", help="point lies outside the chart; map to 0")
    d.add_argument("--json", action="store_true")
    d = demos.add_parser("banach", help="fixed point of an affine contraction and its stability")
    d.add_argument("--k", type=_rational, required=True)
    d.add_argument("--c", type=_rational, default=None)
    d.add_argument("--eps", type=_rational, default=Fraction(1, 8))
    d.add_argument("--steps", type=int, default=10)
    d.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"posetfix: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except SizeLimit as exc:
        print(f"posetfix: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except PosetfixError as exc:
        print(f"posetfix: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
