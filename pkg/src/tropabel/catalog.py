"""Hand-transcribed reference curves.

Vertex positions and edge displacements are in N-coordinates, read off the
published drawings.  Each entry is rebuilt through :func:`curve_from_plane`,
so a transcription error shows up as a closing or balancing failure.
"""
from __future__ import annotations

import os
from fractions import Fraction as F

from .curve import MarkedCurve, ParamCurve, curve_from_plane, locate_mark
from .errors import InvalidMarking
from .lifting import LiftingSet
from .serialize import curve_to_json, write_json
from .torus import TropicalTorus

HALF = F(1, 2)


def _marked(c: ParamCurve, points, edges) -> MarkedCurve:
    marks = []
    for p, e in zip(points, edges):
        hits = [h for h in locate_mark(c, p) if h[0] == e]
        if len(hits) != 1:
            raise InvalidMarking(f"point {p} is not on edge {e} exactly once")
        marks.append(hits[0])
    return MarkedCurve(c, tuple(marks))


def square_class_one() -> ParamCurve:
    """Genus 2, class I, in the torus [[8,2],[2,8]]."""
    T = TropicalTorus(((8, 2), (2, 8)))
    return curve_from_plane(T, [(4, 4), (6, 6)], [
        (0, 1, 1, (2, 2)),
        (1, 0, 1, (0, 6)),
        (1, 0, 1, (6, 0)),
    ])


def genus_five_diag23() -> ParamCurve:
    """Genus 5, class diag(2, 3), in the torus [[12,2],[3,8]]."""
    T = TropicalTorus(((12, 2), (3, 8)))
    pts = [(3, 2), (4, 3), (4, 5), (5, 6), (6, 3), (8, 5), (9, 6), (11, 8)]
    return curve_from_plane(T, pts, [
        (0, 1, 1, (1, 1)), (1, 2, 1, (0, 2)), (1, 4, 1, (2, 0)), (4, 5, 1, (2, 2)),
        (2, 3, 1, (1, 1)), (3, 6, 1, (4, 0)), (6, 7, 1, (2, 2)),
        (5, 0, 1, (7, 0)), (7, 2, 1, (5, 0)),
        (3, 0, 1, (0, 4)), (5, 4, 1, (0, 6)), (7, 6, 1, (0, 6)),
    ])


def skew_theta() -> ParamCurve:
    """Genus 2, class [[2,1],[0,1]], in the torus [[4,-1],[-2,3]]; one edge of weight 2."""
    T = TropicalTorus(((4, -1), (-2, 3)))
    return curve_from_plane(T, [(2, 3), (4, 1)], [
        (0, 1, 1, (2, -2)),
        (0, 1, 1, (1, 1)),
        (1, 0, 2, (2, 0)),
    ])


def skew_theta_marked_weighted() -> MarkedCurve:
    """Marks on the weight-2 edge and on the (1,-1) edge."""
    return _marked(skew_theta(), [(1, 3), (3, 2)], [2, 0])


def skew_theta_marked_light() -> MarkedCurve:
    """Marks on the (1,1) edge and on the (1,-1) edge."""
    return _marked(skew_theta(), [(F(5, 2), F(7, 2)), (3, 2)], [1, 0])


def tripod_theta() -> ParamCurve:
    """Theta curve built from a tripod with directions (3,0), (0,2); class diag(3, 2)."""
    T = TropicalTorus(((6, 3), (2, 6)))
    return curve_from_plane(T, [(0, 0), (3, 2)], [
        (0, 1, 1, (3, 2)),
        (1, 0, 3, (3, 0)),
        (1, 0, 2, (0, 4)),
    ])


def doubled_theta() -> MarkedCurve:
    """All weights 2, class 2I, torus [[8,2],[2,8]]; two vertices of multiplicity 4."""
    T = TropicalTorus(((8, 2), (2, 8)))
    c = curve_from_plane(T, [(6, 3), (8, 5)], [
        (0, 1, 2, (2, 2)),
        (1, 0, 2, (6, 0)),
        (1, 0, 2, (0, 6)),
    ])
    return _marked(c, [(3, 3), (7, 4)], [1, 0])


def diag2_types() -> list[ParamCurve]:
    """The five combinatorial types of genus-2 curves of class 2I in the torus [[9,1],[1,7]]."""
    T = TropicalTorus(((9, 1), (1, 7)))
    return [
        curve_from_plane(T, [(3, 3), (4, 4)], [
            (0, 1, 2, (1, 1)), (1, 0, 2, (8, 0)), (1, 0, 2, (0, 6))]),
        curve_from_plane(T, [(F(5, 2), 3), (F(9, 2), 4)], [
            (0, 1, 1, (2, 1)), (1, 0, 2, (7, 0)), (1, 0, 1, (0, 13))]),
        curve_from_plane(T, [(3, F(5, 2)), (4, F(9, 2))], [
            (0, 1, 1, (1, 2)), (1, 0, 1, (17, 0)), (1, 0, 2, (0, 5))]),
        curve_from_plane(T, [(F(5, 2), F(5, 2)), (F(9, 2), F(9, 2))], [
            (0, 1, 1, (2, 2)), (1, 0, 1, (16, 0)), (1, 0, 1, (0, 12))]),
        curve_from_plane(T, [(3, 4), (5, 4)], [
            (0, 1, 2, (2, 0)), (0, 1, 1, (-8, -8)), (0, 1, 1, (-6, 6))]),
    ]


DIAG2_TABLE = [
    # (gcd, multiplicity, markings) per type, in the order of diag2_types()
    (2, 16, 2), (1, 4, 4), (1, 4, 4), (1, 1, 8), (1, 4, 4),
]


def lifting_example() -> tuple[ParamCurve, LiftingSet]:
    """Genus 5, class 2I, torus 5I, with five cut points leaving a tree."""
    T = TropicalTorus(((5, 0), (0, 5)))
    pts = [(1, 2), (2, 1), (3, 1), (4, 2), (1, 3), (2, 4), (3, 4), (4, 3)]
    c = curve_from_plane(T, pts, [
        (0, 1, 1, (1, -1)), (1, 2, 1, (1, 0)), (2, 3, 1, (1, 1)),
        (4, 5, 1, (1, 1)), (5, 6, 1, (1, 0)), (6, 7, 1, (1, -1)),
        (3, 0, 1, (2, 0)), (7, 4, 1, (2, 0)),
        (0, 4, 1, (0, 1)), (3, 7, 1, (0, 1)),
        (5, 1, 1, (0, 2)), (6, 2, 1, (0, 2)),
    ])
    cuts = []
    for p, e in [((HALF, 2), 6), ((1, F(5, 2)), 8), ((3, HALF), 11), ((F(5, 2), 4), 4), ((2, F(9, 2)), 10)]:
        hits = [h for h in locate_mark(c, p) if h[0] == e]
        cuts.append(hits[0])
    return c, LiftingSet(tuple(cuts))


def genus_three_cover() -> ParamCurve:
    """Genus 3, class diag(1, 2), torus [[16,2],[4,8]]: a double cover of a genus-2 curve."""
    T = TropicalTorus(((16, 2), (4, 8)))
    return curve_from_plane(T, [(4, 4), (6, 6), (12, 6), (14, 8)], [
        (0, 1, 1, (2, 2)), (2, 3, 1, (2, 2)),
        (1, 0, 1, (0, 6)), (3, 2, 1, (0, 6)),
        (1, 2, 1, (6, 0)), (3, 0, 1, (6, 0)),
    ])


def all_curves() -> dict[str, ParamCurve | MarkedCurve]:
    out = {
        "square_class_one": square_class_one(),
        "genus_five_diag23": genus_five_diag23(),
        "skew_theta": skew_theta(),
        "skew_theta_marked_weighted": skew_theta_marked_weighted(),
        "skew_theta_marked_light": skew_theta_marked_light(),
        "tripod_theta": tripod_theta(),
        "doubled_theta": doubled_theta(),
        "lifting_example": lifting_example()[0],
        "genus_three_cover": genus_three_cover(),
    }
    for i, c in enumerate(diag2_types(), 1):
        out[f"diag2_type{i}"] = c
    return out


def write_catalog(directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, c in sorted(all_curves().items()):
        path = os.path.join(directory, f"{name}.json")
        write_json(path, curve_to_json(c))
        paths.append(path)
    return paths
