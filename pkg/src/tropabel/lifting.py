"""Cutting a torus curve open along a lifting set and lifting it to the plane.

Two independent pieces of data are kept apart on purpose: the lift of the
vertices is computed from metric data (lengths and slopes), while the loop
classes closing each cut come from the windings alone.  The gluing identity
compares the two.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import ParamCurve, is_simple
from .errors import InvalidCurve, NotLifting
from .exactmath import kernel_dimension
from .torus import det2

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class LiftingSet:
    points: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(e), Fraction(t)) for e, t in self.points))


@dataclass(frozen=True)
class End:
    """Unbounded end attached to ``vertex``, leaving it in direction ``slope``."""

    vertex: int
    slope: tuple[int, int]
    base: Point
    cut: int
    side: str  # "tail" or "head"


@dataclass(frozen=True)
class PlanarEdge:
    tail: int
    head: int
    weight: int
    slope: tuple[int, int]
    length: Fraction


@dataclass(frozen=True)
class PlanarCurve:
    positions: tuple[Point, ...]
    edges: tuple[PlanarEdge, ...]
    ends: tuple[End, ...]
    # ends[2i] and ends[2i+1] come from cut i
    loops: tuple[tuple[int, int], ...]

    def partner(self, j: int) -> int:
        return j ^ 1

    def genus(self) -> int:
        adj = defaultdict(list)
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        seen, comps = set(), 0
        for s in range(len(self.positions)):
            if s in seen:
                continue
            comps += 1
            seen.add(s)
            q = deque([s])
            while q:
                v = q.popleft()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        q.append(w)
        return len(self.edges) - len(self.positions) + comps


def _as_set(Q) -> LiftingSet:
    return Q if isinstance(Q, LiftingSet) else LiftingSet(tuple(Q))


def _potentials(c: ParamCurve, kept: Sequence[int]) -> tuple[dict[int, tuple[int, int]], list[int]]:
    """Spanning-forest winding potentials; returns (potential, inconsistent edges)."""
    adj = defaultdict(list)
    for i in kept:
        e = c.edges[i]
        adj[e.tail].append((i, e.head, 1))
        adj[e.head].append((i, e.tail, -1))
    pot: dict[int, tuple[int, int]] = {}
    for root in range(c.n_vertices):
        if root in pot:
            continue
        pot[root] = (0, 0)
        q = deque([root])
        while q:
            v = q.popleft()
            for i, w, sgn in adj[v]:
                lam = c.edges[i].winding
                cand = (pot[v][0] + sgn * lam[0], pot[v][1] + sgn * lam[1])
                if w not in pot:
                    pot[w] = cand
                    q.append(w)
    bad = []
    for i in kept:
        e = c.edges[i]
        if (pot[e.tail][0] + e.winding[0], pot[e.tail][1] + e.winding[1]) != pot[e.head]:
            bad.append(i)
    return pot, bad


def _cut_edges(c: ParamCurve, Q: LiftingSet) -> set[int]:
    for e, t in Q.points:
        if not 0 <= e < len(c.edges):
            raise NotLifting(f"cut point on missing edge {e}")
        if not 0 < t < c.edges[e].length:
            raise NotLifting(f"cut point on edge {e} is not interior")
    return {e for e, _ in Q.points}


def is_lifting_set(c: ParamCurve, Q) -> bool:
    """Every cycle of the cut graph has zero winding."""
    Q = _as_set(Q)
    cut = _cut_edges(c, Q)
    kept = [i for i in range(len(c.edges)) if i not in cut]
    return not _potentials(c, kept)[1]


def cut_and_lift(c: ParamCurve, Q) -> PlanarCurve:
    """Lift the cut curve to N, anchoring vertex 0 at its fundamental representative."""
    Q = _as_set(Q)
    cut = _cut_edges(c, Q)
    if len(cut) != len(Q.points):
        raise NotLifting("an edge with two cut points disconnects the complement")
    kept = [i for i in range(len(c.edges)) if i not in cut]
    pot, bad = _potentials(c, kept)
    if bad:
        raise NotLifting(f"cycle through edge {bad[0]} has nonzero winding")
    adj = defaultdict(list)
    for i in kept:
        e = c.edges[i]
        adj[e.tail].append((i, e.head, 1))
        adj[e.head].append((i, e.tail, -1))
    lift: dict[int, Point] = {0: c.point(0)} if c.n_vertices else {}
    q = deque([0] if c.n_vertices else [])
    while q:
        v = q.popleft()
        for i, w, sgn in adj[v]:
            if w in lift:
                continue
            d = c.edges[i].displacement
            lift[w] = (lift[v][0] + sgn * d[0], lift[v][1] + sgn * d[1])
            q.append(w)
    if len(lift) != c.n_vertices:
        raise NotLifting("the complement of the cut points is disconnected")
    positions = tuple(lift[v] for v in range(c.n_vertices))
    edges = tuple(PlanarEdge(e.tail, e.head, e.weight, e.slope, e.length)
                  for i, e in enumerate(c.edges) if i not in cut)
    ends, loops = [], []
    for k, (i, t) in enumerate(Q.points):
        e = c.edges[i]
        n = e.vector
        xt, xh = positions[e.tail], positions[e.head]
        ends.append(End(e.tail, n, (xt[0] + t * n[0], xt[1] + t * n[1]), k, "tail"))
        r = e.length - t
        ends.append(End(e.head, (-n[0], -n[1]), (xh[0] - r * n[0], xh[1] - r * n[1]), k, "head"))
        loops.append((pot[e.tail][0] + e.winding[0] - pot[e.head][0],
                      pot[e.tail][1] + e.winding[1] - pot[e.head][1]))
    return PlanarCurve(positions, edges, tuple(ends), tuple(loops))


def end_moment(pc: PlanarCurve | None, end: End | int, at: Fraction = Fraction(0)) -> Fraction:
    """det(slope, point) evaluated at ``base + at * slope``."""
    if isinstance(end, int):
        end = pc.ends[end]
    p = (end.base[0] + at * end.slope[0], end.base[1] + at * end.slope[1])
    return det2(end.slope, p)


def check_menelaus(pc: PlanarCurve) -> bool:
    return sum((end_moment(pc, e) for e in pc.ends), Fraction(0)) == 0


def gluing_defects(c: ParamCurve, Q) -> list[Fraction]:
    """Per cut: moment(tail end) + moment(head end) - det(n, S gamma)."""
    pc = cut_and_lift(c, Q)
    S = c.torus.period
    out = []
    for k, gamma in enumerate(pc.loops):
        e, f = pc.ends[2 * k], pc.ends[2 * k + 1]
        Sg = (S[0][0] * gamma[0] + S[0][1] * gamma[1], S[1][0] * gamma[0] + S[1][1] * gamma[1])
        out.append(end_moment(pc, e) + end_moment(pc, f) - det2(e.slope, Sg))
    return out


def check_gluing(c: ParamCurve, Q) -> bool:
    return all(d == 0 for d in gluing_defects(c, Q))


def reglue(c: ParamCurve, pc: PlanarCurve) -> list[tuple[int, int, tuple[Fraction, Fraction]]]:
    """Close each pair of ends back into an edge; returns (tail, head, tail-to-head displacement)."""
    out = []
    for k in range(len(pc.ends) // 2):
        e, f = pc.ends[2 * k], pc.ends[2 * k + 1]
        xt, xh = pc.positions[e.vertex], pc.positions[f.vertex]
        S = c.torus.period
        g = pc.loops[k]
        Sg = (S[0][0] * g[0] + S[0][1] * g[1], S[1][0] * g[0] + S[1][1] * g[1])
        out.append((e.vertex, f.vertex, (xh[0] + Sg[0] - xt[0], xh[1] + Sg[1] - xt[1])))
    return out


def deformation_matrix(c: ParamCurve) -> list[list[int]]:
    """One row per edge: det(u'_e, x_head - x_tail) as a form on vertex coordinates."""
    n = c.n_vertices
    rows = []
    for e in c.edges:
        row = [0] * (2 * n)
        ux, uy = e.slope
        row[2 * e.head] += -uy
        row[2 * e.head + 1] += ux
        row[2 * e.tail] -= -uy
        row[2 * e.tail + 1] -= ux
        rows.append(row)
    return rows


def deformation_dimension(c: ParamCurve) -> int:
    """Dimension of the space of deformations keeping every slope fixed."""
    ok, why = is_simple(c)
    if not ok:
        raise InvalidCurve(f"deformation count needs a simple curve: {why}")
    return kernel_dimension(deformation_matrix(c), 2 * c.n_vertices)


def deformation_dimension_explicit(c: ParamCurve) -> int:
    """Same count with lengths as unknowns: x_head - x_tail - l_e (w u'_e) = 0."""
    n, m = c.n_vertices, len(c.edges)
    rows = []
    for j, e in enumerate(c.edges):
        u = e.vector
        for k in range(2):
            row = [0] * (2 * n + m)
            row[2 * e.head + k] += 1
            row[2 * e.tail + k] -= 1
            row[2 * n + j] = -u[k]
            rows.append(row)
    return kernel_dimension(rows, 2 * n + m)
