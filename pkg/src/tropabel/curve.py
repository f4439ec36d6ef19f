"""Parametrized tropical curves in a tropical torus.

A curve is a finite metric graph.  Every edge carries a weight, a primitive
integer direction, a positive rational length and a winding vector in
lattice coordinates.  Vertex positions live in the fundamental parallelogram.
The edge from ``tail`` to ``head`` is the straight segment

    S (pos[head] + winding - pos[tail]) = length * weight * slope

in the universal cover.  A zero ``slope`` marks a contracted edge.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Sequence

from .errors import DomainError, InvalidCurve, InvalidMarking
from .exactmath import parse_rational
from .torus import (CurveClass, TorusPoint, TropicalTorus, det2, matvec,
                    reduce_to_fundamental)

IntVec = tuple[int, int]


def _ivec(v) -> IntVec:
    v = tuple(v)
    if len(v) != 2 or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise DomainError(f"expected an integer pair, got {v!r}")
    return v


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: int
    slope: IntVec
    length: Fraction
    winding: IntVec = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "slope", _ivec(self.slope))
        object.__setattr__(self, "winding", _ivec(self.winding))
        object.__setattr__(self, "length", parse_rational(self.length))
        if type(self.weight) is not int or self.weight < 1:
            raise DomainError(f"edge weight must be a positive integer, got {self.weight!r}")
        if self.slope != (0, 0) and gcd(*self.slope) != 1:
            raise DomainError(f"slope {self.slope} is not primitive")
        if self.length <= 0:
            raise DomainError("edge length must be positive")

    @property
    def vector(self) -> IntVec:
        """Weighted slope w * u'."""
        return (self.weight * self.slope[0], self.weight * self.slope[1])

    @property
    def displacement(self) -> tuple[Fraction, Fraction]:
        w = self.weight * self.length
        return (w * self.slope[0], w * self.slope[1])

    @property
    def contracted(self) -> bool:
        return self.slope == (0, 0)

    def reversed(self) -> "Edge":
        return Edge(self.head, self.tail, self.weight, (-self.slope[0], -self.slope[1]),
                    self.length, (-self.winding[0], -self.winding[1]))


@dataclass(frozen=True)
class ParamCurve:
    torus: TropicalTorus
    positions: tuple[TorusPoint, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        pos = tuple(p if isinstance(p, TorusPoint) else TorusPoint(tuple(p)) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "edges", tuple(self.edges))
        n = len(pos)
        for i, e in enumerate(self.edges):
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise DomainError(f"edge {i} references a missing vertex")

    @property
    def n_vertices(self) -> int:
        return len(self.positions)

    def point(self, v: int) -> tuple[Fraction, Fraction]:
        """Position of vertex ``v`` in N-coordinates (fundamental representative)."""
        return self.torus.to_plane(self.positions[v].coords)

    def outgoing(self, v: int) -> list[tuple[int, IntVec]]:
        """(edge index, weighted slope pointing away from v); loops appear twice."""
        out = []
        for i, e in enumerate(self.edges):
            if e.tail == v:
                out.append((i, e.vector))
            if e.head == v:
                out.append((i, (-e.vector[0], -e.vector[1])))
        return out

    def valence(self, v: int) -> int:
        return len(self.outgoing(v))


@dataclass(frozen=True)
class MarkedCurve:
    """A curve with labeled points; mark ``(e, t)`` sits at length ``t`` from the tail of e."""

    curve: ParamCurve
    marks: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        marks = tuple((int(e), parse_rational(t)) for e, t in self.marks)
        for e, t in marks:
            if not 0 <= e < len(self.curve.edges):
                raise InvalidMarking(f"mark on missing edge {e}")
            if not 0 < t < self.curve.edges[e].length:
                raise InvalidMarking(f"mark on edge {e} at t={t} is not interior")
        object.__setattr__(self, "marks", marks)


# ---------------------------------------------------------------------------
# combinatorics


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def genus(c: ParamCurve) -> int:
    """First Betti number |E| - |V| + #components."""
    comps = _components(c.n_vertices, ((e.tail, e.head) for e in c.edges))
    return len(c.edges) - c.n_vertices + len(comps)


def component_genera(c: ParamCurve) -> list[int]:
    comps = _components(c.n_vertices, ((e.tail, e.head) for e in c.edges))
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    ecount = [0] * len(comps)
    for e in c.edges:
        ecount[where[e.tail]] += 1
    return [ecount[i] - len(comp) + 1 for i, comp in enumerate(comps)]


def is_connected(c: ParamCurve) -> bool:
    return len(_components(c.n_vertices, ((e.tail, e.head) for e in c.edges))) <= 1


def bridges(c: ParamCurve) -> list[int]:
    """Indices of edges whose removal disconnects their component."""
    base = len(_components(c.n_vertices, ((e.tail, e.head) for e in c.edges)))
    out = []
    for i, e in enumerate(c.edges):
        if e.tail == e.head:
            continue
        rest = ((f.tail, f.head) for j, f in enumerate(c.edges) if j != i)
        if len(_components(c.n_vertices, rest)) > base:
            out.append(i)
    return out


def unbalanced_vertices(c: ParamCurve) -> list[int]:
    bad = []
    for v in range(c.n_vertices):
        sx = sy = 0
        for _, u in c.outgoing(v):
            sx += u[0]
            sy += u[1]
        if sx or sy:
            bad.append(v)
    return bad


def check_balanced(c: ParamCurve) -> bool:
    return not unbalanced_vertices(c)


def curve_gcd(c: ParamCurve) -> int:
    if not c.edges:
        raise DomainError("an edgeless curve has no gcd")
    g = 0
    for e in c.edges:
        g = gcd(g, e.weight)
    return g


# ---------------------------------------------------------------------------
# degree


def degree_class(c: ParamCurve) -> CurveClass:
    """Class of the curve from its windings: sum over edges of (w u') (x) winding."""
    if not check_balanced(c):
        raise InvalidCurve(f"curve is unbalanced at vertices {unbalanced_vertices(c)}")
    M = [[0, 0], [0, 0]]
    for e in c.edges:
        u = e.vector
        for i in range(2):
            for j in range(2):
                M[i][j] += u[i] * e.winding[j]
    return CurveClass(M)


def degree_class_crossings(c: ParamCurve) -> CurveClass:
    """Class of the curve by counting signed crossings with the sides of the parallelogram.

    Each edge is followed from its tail representative along its metric
    displacement; the floor of the end point counts how many times each pair
    of opposite sides was crossed.  Windings are not consulted.
    """
    if not check_balanced(c):
        raise InvalidCurve(f"curve is unbalanced at vertices {unbalanced_vertices(c)}")
    M = [[0, 0], [0, 0]]
    for e in c.edges:
        start = c.positions[e.tail].coords
        step = c.torus.to_lattice_coords(e.displacement)
        cross = (floor(start[0] + step[0]), floor(start[1] + step[1]))
        u = e.vector
        for i in range(2):
            for j in range(2):
                M[i][j] += u[i] * cross[j]
    return CurveClass(M)


# ---------------------------------------------------------------------------
# simplicity and validation


def vertex_slopes(c: ParamCurve, v: int) -> list[IntVec]:
    return [u for _, u in c.outgoing(v)]


def is_simple(c: ParamCurve) -> tuple[bool, str]:
    """Trivalent with immersed edges; the reason names the first failure."""
    for i, e in enumerate(c.edges):
        if e.contracted:
            return False, f"edge {i} is contracted"
    for v in range(c.n_vertices):
        slopes = vertex_slopes(c, v)
        if len(slopes) != 3:
            return False, f"vertex {v} has valence {len(slopes)}"
        for a, b in itertools.combinations(slopes, 2):
            if det2(a, b) == 0:
                return False, f"vertex {v} has collinear edges"
    return True, "simple"


def edge_violation(c: ParamCurve, i: int) -> str | None:
    e = c.edges[i]
    pt, ph = c.positions[e.tail].coords, c.positions[e.head].coords
    lam = (ph[0] + e.winding[0] - pt[0], ph[1] + e.winding[1] - pt[1])
    if c.torus.to_plane(lam) != e.displacement:
        return (f"edge {i}: endpoints and winding give displacement "
                f"{tuple(str(x) for x in c.torus.to_plane(lam))}, "
                f"slope and length give {tuple(str(x) for x in e.displacement)}")
    return None


def validate(c: ParamCurve) -> list[str]:
    """Geometric consistency problems, one string per offending edge; empty if well-formed."""
    problems = [p for i in range(len(c.edges)) if (p := edge_violation(c, i))]
    for i in bridges(c):
        if not c.edges[i].contracted:
            problems.append(f"edge {i}: bridge with nonzero slope")
    return problems


def scale_curve(c: ParamCurve, k: int) -> ParamCurve:
    if type(k) is not int or k < 1:
        raise DomainError("scale factor must be a positive integer")
    edges = tuple(replace(e, weight=e.weight * k, length=e.length / k) for e in c.edges)
    return ParamCurve(c.torus, c.positions, edges)


def scale_marked(mc: MarkedCurve, k: int) -> MarkedCurve:
    return MarkedCurve(scale_curve(mc.curve, k), tuple((e, t / k) for e, t in mc.marks))


# ---------------------------------------------------------------------------
# construction helpers


def primitive_direction(d: Sequence[Fraction]) -> tuple[IntVec, Fraction]:
    """Write a nonzero rational vector as ``s * u`` with u primitive integral and s > 0."""
    d = tuple(Fraction(x) for x in d)
    if d == (0, 0):
        raise DomainError("zero vector has no direction")
    den = d[0].denominator * d[1].denominator
    ix, iy = int(d[0] * den), int(d[1] * den)
    g = gcd(ix, iy)
    u = (ix // g, iy // g)
    s = d[0] / u[0] if u[0] else d[1] / u[1]
    return u, s


def curve_from_plane(torus: TropicalTorus, points: Sequence[Sequence],
                     edges: Sequence[tuple]) -> ParamCurve:
    """Build a curve from vertex positions in N and edge displacements.

    ``edges`` holds ``(tail, head, weight, displacement)``; the displacement
    is the vector from the tail to the lift of the head reached along the edge,
    so it must differ from ``points[head] - points[tail]`` by a lattice vector.
    """
    S_inv = torus.inverse
    reduced = [reduce_to_fundamental(p, torus) for p in points]
    pts = [tuple(parse_rational(x) for x in p) for p in points]
    out = []
    for tail, head, weight, disp in edges:
        disp = tuple(parse_rational(x) for x in disp)
        gap = (pts[tail][0] + disp[0] - pts[head][0], pts[tail][1] + disp[1] - pts[head][1])
        shift = matvec(S_inv, gap)
        if any(x.denominator != 1 for x in shift):
            raise InvalidCurve(f"edge {tail}->{head}: displacement does not close up modulo the lattice")
        u, s = primitive_direction(disp)
        length = s / weight
        ka, kb = reduced[tail][1], reduced[head][1]
        wind = (int(shift[0]) + kb[0] - ka[0], int(shift[1]) + kb[1] - ka[1])
        out.append(Edge(tail, head, weight, u, length, wind))
    return ParamCurve(torus, tuple(r[0] for r in reduced), tuple(out))


def mark_position(c: ParamCurve, edge: int, t: Fraction) -> TorusPoint:
    e = c.edges[edge]
    x = c.point(e.tail)
    w = t * e.weight
    return reduce_to_fundamental((x[0] + w * e.slope[0], x[1] + w * e.slope[1]), c.torus)[0]


def locate_mark(c: ParamCurve, point: Sequence) -> list[tuple[int, Fraction]]:
    """All (edge, t) with the interior point of the edge at length t equal to ``point`` (N-coordinates, mod the lattice)."""
    target = reduce_to_fundamental(point, c.torus)[0].coords
    S_inv = c.torus.inverse
    hits = []
    for i, e in enumerate(c.edges):
        if e.contracted:
            continue
        base = c.positions[e.tail].coords
        rate = matvec(S_inv, e.vector)
        j = 0 if rate[0] != 0 else 1
        # t ranges over (0, l): the j-th lattice coordinate sweeps an interval
        a, b = base[j] - target[j], base[j] - target[j] + rate[j] * e.length
        lo, hi = sorted((a, b))
        for n in range(floor(lo), floor(hi) + 1):
            t = (n - (base[j] - target[j])) / rate[j]
            if not 0 < t < e.length:
                continue
            other = base[1 - j] + rate[1 - j] * t - target[1 - j]
            if other.denominator == 1:
                hits.append((i, t))
    return hits


def complement_is_tree(c: ParamCurve, marked_edges: Sequence[int]) -> tuple[bool, str]:
    """Whether removing one interior point on each listed edge leaves a tree."""
    counts = defaultdict(int)
    for e in marked_edges:
        counts[e] += 1
    if any(v > 1 for v in counts.values()):
        return False, "an edge carries two marks"
    kept = [(e.tail, e.head) for i, e in enumerate(c.edges) if i not in counts]
    if len(kept) != c.n_vertices - 1:
        return False, f"{len(kept)} unmarked edges, a spanning tree needs {c.n_vertices - 1}"
    if len(_components(c.n_vertices, kept)) != 1:
        return False, "unmarked edges do not connect the vertices"
    return True, "tree"


# ---------------------------------------------------------------------------
# canonical forms


def _edge_key(e: Edge, relabel: Sequence[int]) -> tuple[tuple, bool]:
    a = (relabel[e.tail], relabel[e.head], e.weight, e.slope, e.length, e.winding)
    r = e.reversed()
    b = (relabel[r.tail], relabel[r.head], r.weight, r.slope, r.length, r.winding)
    return (a, False) if a <= b else (b, True)


def canonical_key(c: ParamCurve | MarkedCurve) -> tuple:
    """Isomorphism invariant for deduplication.

    Vertices are relabeled by position (ties broken by trying every order),
    edges are oriented to their lexicographically smaller form and sorted.
    Marks keep their labels and follow their edges.
    """
    mc = c if isinstance(c, MarkedCurve) else None
    curve = mc.curve if mc else c
    groups = defaultdict(list)
    for v, p in enumerate(curve.positions):
        groups[p.coords].append(v)
    order = sorted(groups)
    best = None
    for choice in itertools.product(*(itertools.permutations(groups[k]) for k in order)):
        seq = [v for grp in choice for v in grp]
        relabel = [0] * curve.n_vertices
        for new, old in enumerate(seq):
            relabel[old] = new
        keyed = [_edge_key(e, relabel) for e in curve.edges]
        perm = sorted(range(len(keyed)), key=lambda i: keyed[i][0])
        edges_key = tuple(keyed[i][0] for i in perm)
        marks_key = ()
        if mc is not None:
            marks = []
            for e, t in mc.marks:
                flipped = keyed[e][1]
                tt = curve.edges[e].length - t if flipped else t
                # the position in the sorted list identifies the edge up to parallel twins
                marks.append((keyed[e][0], tt))
            marks_key = tuple(marks)
        key = (curve.torus.period, tuple(sorted(groups)), edges_key, marks_key)
        if best is None or key < best:
            best = key
    return best
