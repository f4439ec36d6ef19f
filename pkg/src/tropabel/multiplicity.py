"""Vertex, classical, refined and complex multiplicities of simple curves."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import prod

from .curve import (MarkedCurve, ParamCurve, complement_is_tree, curve_gcd, genus,
                    is_simple, vertex_slopes)
from .errors import DomainError, InvalidCurve, InvalidMarking
from .exactmath import (IntMatrix, LaurentHalf, maximal_minor_gcd_bruteforce,
                        quantum_integer, smith_normal_form)
from .torus import det2


def vertex_multiplicity(c: ParamCurve, v: int) -> int:
    slopes = vertex_slopes(c, v)
    if len(slopes) != 3:
        raise InvalidCurve(f"vertex {v} is not trivalent")
    return abs(det2(slopes[0], slopes[1]))


def _require_simple(c: ParamCurve) -> list[int]:
    ok, why = is_simple(c)
    if not ok:
        raise InvalidCurve(f"curve is not simple: {why}")
    return [vertex_multiplicity(c, v) for v in range(c.n_vertices)]


def classical_multiplicity(c: ParamCurve) -> int:
    return prod(_require_simple(c))


def refined_multiplicity(c: ParamCurve) -> LaurentHalf:
    return reduce(lambda p, m: p * quantum_integer(m), _require_simple(c), LaurentHalf.constant(1))


def complex_multiplicity(c: ParamCurve) -> int:
    return curve_gcd(c) * classical_multiplicity(c)


def check_parity(c: ParamCurve) -> bool:
    """Sum of vertex multiplicities divided by the gcd is even."""
    ms = _require_simple(c)
    d = curve_gcd(c)
    total = sum(ms)
    return total % d == 0 and (total // d) % 2 == 0


# ---------------------------------------------------------------------------
# the Theta matrix


@dataclass(frozen=True)
class PieceTag:
    source_edge: int
    tail: int
    head: int
    weight: int
    coordinate: tuple[int, int]   # u in det(u, -)
    direction: tuple[int, int]    # primitive direction from tail to head


@dataclass(frozen=True)
class ThetaMatrix:
    matrix: IntMatrix
    row_tags: tuple
    column_tags: tuple[tuple[int, int], ...]
    n_vertices: int
    n_marks: int
    pieces: tuple[PieceTag, ...] = field(default=())

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def phi(self, delta: int) -> list[int]:
        """Linear form on rows, w_e / delta on edge rows, that kills every column."""
        out = []
        for tag in self.row_tags:
            if tag[0] == "edge":
                p: PieceTag = tag[1]
                sign = 1 if p.coordinate == p.direction else -1
                out.append(sign * p.weight // delta)
            else:
                out.append(0)
        return out


def subdivide(mc: MarkedCurve) -> tuple[int, list[tuple[int, int, int, int, tuple[int, int]]]]:
    """Pieces of the curve cut at the marks: (source edge, a, b, weight, direction a->b)."""
    c = mc.curve
    n = c.n_vertices
    by_edge: dict[int, list[tuple[Fraction, int]]] = {}
    for k, (e, t) in enumerate(mc.marks):
        by_edge.setdefault(e, []).append((t, n + k))
    pieces = []
    for i, e in enumerate(c.edges):
        stops = [e.tail] + [v for _, v in sorted(by_edge.get(i, []))] + [e.head]
        for a, b in zip(stops, stops[1:]):
            pieces.append((i, a, b, e.weight, e.slope))
    return n + len(mc.marks), pieces


def build_theta(mc: MarkedCurve, flips: frozenset[int] | set[int] | None = None) -> ThetaMatrix:
    """Integer matrix of the map from vertex positions to edge quotients and mark positions.

    Rows are the pieces of the subdivided graph (coordinate det(u', -) on the
    quotient by the edge direction) followed by two identity rows per mark.
    Each piece is oriented from its lower vertex index to its higher one;
    ``flips`` reverses the listed pieces.
    """
    c = mc.curve
    ok, why = is_simple(c)
    if not ok:
        raise InvalidCurve(f"curve is not simple: {why}")
    g = genus(c)
    if len(mc.marks) != g:
        raise InvalidMarking(f"need {g} marks, got {len(mc.marks)}")
    tree, why = complement_is_tree(c, [e for e, _ in mc.marks])
    if not tree:
        raise InvalidMarking(f"complement of the marks is not a tree: {why}")
    flips = frozenset(flips or ())
    nv, raw = subdivide(mc)
    rows, tags, pieces = [], [], []
    for j, (src, a, b, w, u) in enumerate(raw):
        tail, head, direction = a, b, u
        if a > b:
            tail, head, direction = b, a, (-u[0], -u[1])
        if j in flips:
            tail, head, direction = head, tail, (-direction[0], -direction[1])
        row = [0] * (2 * nv)
        row[2 * head] += -u[1]
        row[2 * head + 1] += u[0]
        row[2 * tail] -= -u[1]
        row[2 * tail + 1] -= u[0]
        tag = PieceTag(src, tail, head, w, u, direction)
        rows.append(row)
        tags.append(("edge", tag))
        pieces.append(tag)
    n = c.n_vertices
    for k in range(len(mc.marks)):
        for coord in range(2):
            row = [0] * (2 * nv)
            row[2 * (n + k) + coord] = 1
            rows.append(row)
            tags.append(("mark", k, coord))
    cols = tuple((v, k) for v in range(nv) for k in range(2))
    return ThetaMatrix(IntMatrix.from_rows(rows), tuple(tags), cols, nv, len(mc.marks), tuple(pieces))


def theta_torsion(theta: ThetaMatrix, route: str = "snf") -> int:
    """Order of the torsion of the cokernel of an injective Theta."""
    if route == "snf":
        divisors, r = smith_normal_form(theta.matrix)
        if r < theta.matrix.cols:
            raise InvalidCurve("Theta is not injective")
        return prod(divisors)
    if route == "minors":
        g = maximal_minor_gcd_bruteforce(theta.matrix)
        if g == 0:
            raise InvalidCurve("Theta is not injective")
        return g
    raise DomainError(f"unknown route {route!r}")


def nishinou_multiplicity(mc: MarkedCurve, route: str = "snf",
                          flips: frozenset[int] | None = None) -> int:
    theta = build_theta(mc, flips)
    return theta_torsion(theta, route) * prod(p.weight for p in theta.pieces)


def check_product_theorem(mc: MarkedCurve) -> bool:
    expected = complex_multiplicity(mc.curve)
    return (nishinou_multiplicity(mc, "snf") == expected
            and nishinou_multiplicity(mc, "minors") == expected)


def curve_report(c: ParamCurve, mc: MarkedCurve | None = None) -> dict:
    ms = _require_simple(c)
    report = {
        "vertex_multiplicities": ms,
        "classical": prod(ms),
        "refined": refined_multiplicity(c),
        "gcd": curve_gcd(c),
        "complex_product": complex_multiplicity(c),
        "parity": check_parity(c),
    }
    if mc is not None:
        theta = build_theta(mc)
        weights = prod(p.weight for p in theta.pieces)
        report["theta_torsion"] = theta_torsion(theta, "snf")
        report["complex_theta"] = report["theta_torsion"] * weights
        report["complex_minors"] = theta_torsion(theta, "minors") * weights
        report["agree"] = report["complex_theta"] == report["complex_minors"] == report["complex_product"]
    return report
