"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 the input could not be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import __version__
from .curve import (MarkedCurve, complement_is_tree, curve_gcd, degree_class,
                    degree_class_crossings, genus, is_simple, unbalanced_vertices, validate)
from .enumerate import (SearchBounds, assemble_invariants, closed_form_N_1n,
                        eisenstein_coefficients, enumerate_genus2)
from .errors import DomainError, TropabelError
from .exactmath import parse_rational
from .multiplicity import curve_report
from .serialize import (class_to_json, curve_from_json, curve_to_json, dumps, laurent_to_json,
                        read_json, solutions_to_json, table_to_json, torus_from_json, write_json)
from .svg import render_svg
from .torus import CurveClass, is_realizable, sample_generic_points


class UsageError(Exception):
    """Bad input file or argument; maps to exit code 2."""


def _load_curve(path: str):
    try:
        return curve_from_json(read_json(path))
    except (OSError, json.JSONDecodeError, DomainError, TropabelError) as exc:
        raise UsageError(f"cannot read curve {path}: {exc}") from exc


def _parse_class(text: str) -> CurveClass:
    try:
        a, b, c, d = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--class expects four comma-separated integers, got {text!r}") from exc
    return CurveClass(((a, b), (c, d)))


def _parse_marks(items: list[str]) -> tuple:
    marks = []
    for item in items:
        try:
            e, t = item.split(":")
            marks.append((int(e), parse_rational(t)))
        except (ValueError, DomainError) as exc:
            raise UsageError(f"--marks expects EDGE:T, got {item!r}") from exc
    return tuple(marks)


# ---------------------------------------------------------------------------


def cmd_check(args) -> tuple[dict, int]:
    c = _load_curve(args.file)
    curve = c.curve if isinstance(c, MarkedCurve) else c
    problems = validate(curve)
    unbalanced = unbalanced_vertices(curve)
    simple, reason = is_simple(curve)
    report = {
        "file": args.file,
        "violations": problems,
        "balanced": not unbalanced,
        "unbalanced_vertices": unbalanced,
        "genus": genus(curve),
        "simple": simple,
        "simple_reason": reason,
        "gcd": curve_gcd(curve) if curve.edges else None,
    }
    ok = not problems and not unbalanced and simple
    if not unbalanced:
        cls = degree_class(curve)
        cross = degree_class_crossings(curve)
        report["class"] = class_to_json(cls)
        report["class_routes_agree"] = cls == cross
        report["realizable"] = is_realizable(cls, curve.torus)
        ok = ok and cls == cross
    if isinstance(c, MarkedCurve):
        tree, why = complement_is_tree(curve, [e for e, _ in c.marks])
        report["marks_complement_tree"] = tree
        ok = ok and tree
    report["ok"] = ok
    return report, 0 if ok else 1


def cmd_mult(args) -> tuple[dict, int]:
    c = _load_curve(args.file)
    curve = c.curve if isinstance(c, MarkedCurve) else c
    mc = c if isinstance(c, MarkedCurve) else None
    if args.marks:
        try:
            mc = MarkedCurve(curve, _parse_marks(args.marks))
        except TropabelError as exc:
            return {"error": str(exc)}, 1
    try:
        rep = curve_report(curve, mc)
    except TropabelError as exc:
        return {"error": str(exc)}, 1
    rep["refined"] = laurent_to_json(rep["refined"])
    ok = rep.get("agree", True)
    rep["ok"] = ok
    return rep, 0 if ok else 1


def _enumerate(args):
    try:
        T = torus_from_json(read_json(args.torus))
    except (OSError, json.JSONDecodeError, DomainError) as exc:
        raise UsageError(f"cannot read torus {args.torus}: {exc}") from exc
    C = _parse_class(args.curve_class)
    bounds = SearchBounds.default(C)
    if args.bound is not None or args.winding_bound is not None:
        bounds = SearchBounds(args.bound or bounds.slope, args.winding_bound or bounds.winding)
    pts = sample_generic_points(T, 2, args.seed)
    return enumerate_genus2(T, C, pts, bounds, args.backend)


def cmd_enumerate(args) -> tuple[dict, int]:
    try:
        sol = _enumerate(args)
    except UsageError:
        raise
    except TropabelError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}, 1
    table = assemble_invariants(sol)
    data = solutions_to_json(sol)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_json(os.path.join(args.out, "solutions.json"), data)
        write_json(os.path.join(args.out, "invariants.json"), table_to_json(table))
        for i, mc in enumerate(sol.solutions):
            write_json(os.path.join(args.out, f"solution_{i:03d}.json"), curve_to_json(mc))
    report = {
        "solutions": len(sol.solutions),
        "certificate": sol.certificate,
        "bounds": data["bounds"],
        "points": data["points"],
        "N": table.N,
        "M": table.M,
    }
    if args.format == "json":
        report["detail"] = data
    return report, 0


def cmd_invariants(args) -> tuple[dict, int]:
    try:
        sol = _enumerate(args)
    except UsageError:
        raise
    except TropabelError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}, 1
    table = assemble_invariants(sol)
    out = table_to_json(table)
    fails = table.consistency()
    out["consistency"] = fails
    return out, 0 if not fails else 1


def cmd_series(args) -> tuple[dict, int]:
    if args.genus < 2 or args.nmax < 1:
        raise UsageError("--genus must be >= 2 and --nmax >= 1")
    series = eisenstein_coefficients(args.genus, args.nmax)
    rows = [{"n": n, "closed_form": closed_form_N_1n(args.genus, n), "series": series[n]}
            for n in range(1, args.nmax + 1)]
    ok = all(r["closed_form"] == r["series"] for r in rows)
    return {"genus": args.genus, "rows": rows, "status": "OK" if ok else "MISMATCH"}, 0 if ok else 1


def cmd_svg(args) -> tuple[dict, int]:
    c = _load_curve(args.file)
    text = render_svg(c)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return {"written": args.out}, 0


def cmd_catalog(args) -> tuple[dict, int]:
    from .catalog import write_catalog
    return {"written": write_catalog(args.out)}, 0


# ---------------------------------------------------------------------------


def _text(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict) and set(v) == {"coefficients", "text"}:
            lines.append(f"{indent}{k}: {v['text']}")
        elif isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                lines.append(indent + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropabel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate a curve file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("mult", parents=[common], help="multiplicities of a curve, both routes")
    s.add_argument("file")
    s.add_argument("--marks", nargs="+", metavar="EDGE:T")
    s.set_defaults(func=cmd_mult)

    for name, func, help_ in (("enumerate", cmd_enumerate, "genus-2 curves through two sampled points"),
                              ("invariants", cmd_invariants, "invariant table of a genus-2 enumeration")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--torus", required=True)
        s.add_argument("--class", dest="curve_class", required=True, metavar="a,b,c,d")
        s.add_argument("--seed", type=int, required=True)
        s.add_argument("--bound", type=int, help="slope box half-width")
        s.add_argument("--winding-bound", type=int)
        s.add_argument("--backend", choices=("cython", "python"))
        if name == "enumerate":
            s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("series", parents=[common], help="closed form against the generating series")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("svg", parents=[common], help="draw a curve")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_svg)

    s = sub.add_parser("catalog", parents=[common], help="write the reference curves as curve files")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    out = out or (lambda s: sys.stdout.write(s))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report, code = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    out(dumps(report) if args.format == "json" else _text(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
