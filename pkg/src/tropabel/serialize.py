"""JSON files for tori, curves, solution sets and invariant tables.

Rationals are always strings ``"p/q"``.  Output is deterministic: keys are
sorted and lists keep their canonical order.
"""
from __future__ import annotations

import json
from typing import Any

from .curve import Edge, MarkedCurve, ParamCurve
from .errors import DomainError
from .exactmath import LaurentHalf, format_rational, parse_rational
from .torus import CurveClass, TorusPoint, TropicalTorus


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise DomainError(f"missing key {key!r}")
    return d[key]


def torus_to_json(T: TropicalTorus) -> dict:
    return {"period": [[format_rational(x) for x in r] for r in T.period]}


def torus_from_json(d: dict) -> TropicalTorus:
    period = _require(d, "period")
    if not isinstance(period, list) or len(period) != 2:
        raise DomainError("period must be a 2x2 array")
    return TropicalTorus(tuple(tuple(parse_rational(x) for x in r) for r in period))


def class_to_json(C: CurveClass) -> list:
    return [list(r) for r in C.matrix]


def class_from_json(d) -> CurveClass:
    m = _require(d, "class") if isinstance(d, dict) else d
    return CurveClass(tuple(tuple(r) for r in m))


def point_to_json(p: TorusPoint) -> list:
    return [format_rational(x) for x in p.coords]


def laurent_to_json(p: LaurentHalf) -> dict:
    return {"coefficients": {str(k): v for k, v in p.items()}, "text": str(p)}


def laurent_from_json(d: dict) -> LaurentHalf:
    return LaurentHalf({int(k): int(v) for k, v in _require(d, "coefficients").items()})


def curve_to_json(c: ParamCurve | MarkedCurve) -> dict:
    mc = c if isinstance(c, MarkedCurve) else None
    curve = mc.curve if mc else c
    out = {
        "torus": torus_to_json(curve.torus),
        "vertices": {str(v): point_to_json(p) for v, p in enumerate(curve.positions)},
        "edges": [
            {"tail": e.tail, "head": e.head, "weight": e.weight,
             "primitive_slope": list(e.slope), "length": format_rational(e.length),
             "winding": list(e.winding)}
            for e in curve.edges
        ],
    }
    if mc is not None:
        out["marks"] = [{"edge": e, "t": format_rational(t)} for e, t in mc.marks]
    return out


def curve_from_json(d: dict) -> ParamCurve | MarkedCurve:
    """Inverse of :func:`curve_to_json`; returns a MarkedCurve when marks are present."""
    try:
        T = torus_from_json(_require(d, "torus"))
        verts = _require(d, "vertices")
        ids = sorted(verts, key=int)
        if [int(i) for i in ids] != list(range(len(ids))):
            raise DomainError("vertex ids must be 0..n-1")
        positions = tuple(TorusPoint(tuple(verts[i])) for i in ids)
        edges = tuple(
            Edge(int(e["tail"]), int(e["head"]), int(e["weight"]), tuple(e["primitive_slope"]),
                 parse_rational(e["length"]), tuple(e["winding"]))
            for e in _require(d, "edges"))
        curve = ParamCurve(T, positions, edges)
        if d.get("marks"):
            return MarkedCurve(curve, tuple((int(m["edge"]), parse_rational(m["t"])) for m in d["marks"]))
        return curve
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed curve: {exc}") from exc


def marked_curve_text(c: ParamCurve | MarkedCurve) -> str:
    return json.dumps(curve_to_json(c), sort_keys=True, separators=(",", ":"))


def solutions_to_json(sol) -> dict:
    from .multiplicity import curve_report
    items = []
    for mc in sol.solutions:
        rep = curve_report(mc.curve)
        items.append({
            "curve": curve_to_json(mc),
            "gcd": rep["gcd"],
            "multiplicity": rep["classical"],
            "refined": laurent_to_json(rep["refined"]),
        })
    return {
        "torus": torus_to_json(sol.torus),
        "class": class_to_json(sol.curve_class),
        "genus": sol.genus,
        "points": [point_to_json(p) for p in sol.points],
        "bounds": {"slope": sol.bounds.slope, "winding": sol.bounds.winding},
        "certificate": sol.certificate,
        "solutions": items,
    }


def table_to_json(table) -> dict:
    return {
        "genus": table.genus,
        "class": class_to_json(table.curve_class),
        "per_gcd": {str(k): {"N": table.per_gcd_N[k], "BG": laurent_to_json(table.per_gcd_BG[k])}
                    for k in sorted(table.per_gcd_N)},
        "M": table.M,
        "N": table.N,
        "BG": laurent_to_json(table.BG),
        "R": laurent_to_json(table.R),
    }


def read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
