"""Genus-2 enumeration through two points, invariant tables and closed forms.

A simple genus-2 curve in a torus is a theta graph: two trivalent vertices
A and B joined by three edges with weighted slopes u1, u2, u3 = -u1-u2
leaving A.  Writing U = [u1 u2] and Q = S C^T, the curve lies in class C iff
U^-1 C is integral (those are the windings, with the third edge straight),
and its lengths are read off

    U^-1 Q U^-T = [[l1 + l3, l3], [l3, l2 + l3]].

So every shape is rigid up to translation.  Shapes are found two ways: a
bounded scan over slope pairs (the compiled hot loop) and an exhaustive
search over the lattices between C Z^2 and Z^2, each reduced to its obtuse
superbase.  The two must agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm, prod
from typing import Callable, Iterable, Sequence

from . import kernels
from .curve import (Edge, MarkedCurve, ParamCurve, check_balanced, complement_is_tree,
                    curve_gcd, degree_class, degree_class_crossings, is_simple,
                    mark_position, validate)
from .errors import (DomainError, NonGenericConfiguration, NotRealizable,
                     SearchIncomplete, TropabelError)
from .exactmath import LaurentHalf, compositions, divisors, quantum_integer, sigma1
from .lifting import deformation_dimension
from .multiplicity import (check_parity, check_product_theorem, classical_multiplicity,
                           refined_multiplicity)
from .torus import (CurveClass, TorusPoint, TropicalTorus, class_integral_length, det2,
                    inverse2, is_realizable, matmul2, matvec, reduce_to_fundamental,
                    transpose2)

IntVec = tuple[int, int]


@dataclass(frozen=True)
class SearchBounds:
    slope: int
    winding: int

    def __post_init__(self):
        if self.slope < 1 or self.winding < 0:
            raise DomainError("search bounds must be positive")

    @classmethod
    def default(cls, C: CurveClass) -> "SearchBounds":
        (a, b), (c, d) = C.matrix
        sums = (abs(a) + abs(b), abs(c) + abs(d), abs(a) + abs(c), abs(b) + abs(d))
        return cls(max(sums) + 2, max(abs(x) for x in C.flat()) + 2)

    def doubled(self) -> "SearchBounds":
        return SearchBounds(2 * self.slope, 2 * self.winding)


@dataclass(frozen=True)
class ThetaShape:
    """Weighted slopes out of A, metric lengths and windings (third edge straight)."""

    slopes: tuple[IntVec, IntVec, IntVec]
    lengths: tuple[Fraction, Fraction, Fraction]
    windings: tuple[IntVec, IntVec, IntVec]

    @property
    def weights(self) -> tuple[int, int, int]:
        return tuple(gcd(*u) for u in self.slopes)

    @property
    def vertex_multiplicity(self) -> int:
        return abs(det2(self.slopes[0], self.slopes[1]))

    @property
    def gcd(self) -> int:
        return gcd(*self.weights)

    @property
    def offset(self) -> tuple[Fraction, Fraction]:
        """x_B - x_A along the straight edge."""
        u, l = self.slopes[2], self.lengths[2]
        return (l * u[0], l * u[1])

    def key(self) -> tuple:
        return symmetry_key(self.slopes)

    def has_automorphism(self) -> bool:
        """Whether a nontrivial relabeling of edges and vertices fixes slopes and lengths."""
        base = tuple(zip(self.slopes, self.lengths))
        for perm in itertools.permutations(range(3)):
            for s in (1, -1):
                if perm == (0, 1, 2) and s == 1:
                    continue
                img = tuple(((s * self.slopes[i][0], s * self.slopes[i][1]), self.lengths[i]) for i in perm)
                if img == base:
                    return True
        return False


def symmetry_key(slopes: Sequence[IntVec]) -> tuple[IntVec, IntVec, IntVec]:
    """Smallest relabeling of a slope triple under edge permutations and swapping A, B."""
    best = None
    for perm in itertools.permutations(slopes):
        for s in (1, -1):
            cand = tuple((s * u[0], s * u[1]) for u in perm)
            if best is None or cand < best:
                best = cand
    return best


def _q_matrix(T: TropicalTorus, C: CurveClass):
    Q = matmul2(T.period, transpose2(C.matrix))
    if Q[0][1] != Q[1][0]:
        raise NotRealizable("C S^T is not symmetric")
    return Q


def shape_from_slopes(T: TropicalTorus, C: CurveClass, u1: IntVec, u2: IntVec) -> ThetaShape | None:
    """The shape with these first two slopes, or None if it is not in class C with positive lengths."""
    U = ((u1[0], u2[0]), (u1[1], u2[1]))
    if det2(u1, u2) == 0:
        return None
    Ui = inverse2(U)
    lam = matmul2(Ui, C.matrix)
    if any(x.denominator != 1 for r in lam for x in r):
        return None
    L = matmul2(matmul2(Ui, _q_matrix(T, C)), transpose2(Ui))
    l3 = L[0][1]
    lengths = (L[0][0] - l3, L[1][1] - l3, l3)
    if any(x <= 0 for x in lengths):
        return None
    u3 = (-u1[0] - u2[0], -u1[1] - u2[1])
    windings = ((int(lam[0][0]), int(lam[0][1])), (int(lam[1][0]), int(lam[1][1])), (0, 0))
    return ThetaShape((u1, u2, u3), lengths, windings)


def canonical_shape(T: TropicalTorus, C: CurveClass, slopes: Sequence[IntVec]) -> ThetaShape:
    k = symmetry_key(slopes)
    shape = shape_from_slopes(T, C, k[0], k[1])
    if shape is None:
        raise TropabelError(f"slopes {slopes} do not define a shape in this class")
    return shape


def theta_shapes_scan(T: TropicalTorus, C: CurveClass, bounds: SearchBounds | None = None,
                      backend: str | None = None) -> tuple[list[ThetaShape], int]:
    """Shapes found by the bounded slope scan, plus the number of wall hits."""
    bounds = bounds or SearchBounds.default(C)
    Q = _q_matrix(T, C)
    q = (Q[0][0], Q[0][1], Q[1][1])
    den = lcm(*(x.denominator for x in q))
    qn = tuple(int(x * den) for x in q)
    found, hits = kernels.scan_slope_pairs(C.flat(), qn, bounds.slope, bounds.winding, backend)
    keys = {symmetry_key(((a1, b1), (a2, b2), (-a1 - a2, -b1 - b2))) for a1, b1, a2, b2 in found}
    return [canonical_shape(T, C, k) for k in sorted(keys)], hits


def _hnf_lattices(C: CurveClass) -> Iterable[tuple[tuple[int, int], tuple[int, int]]]:
    """Bases [[a, b], [0, d]] of the lattices M with C Z^2 in M in Z^2."""
    (c11, c12), (c21, c22) = C.matrix
    n = abs(c11 * c22 - c12 * c21)
    for a in divisors(n):
        for d in divisors(n // a):
            for b in range(a):
                # H^-1 C integral: rows of C over d, then first row corrected
                if c21 % d or c22 % d:
                    continue
                if (c11 - b * (c21 // d)) % a or (c12 - b * (c22 // d)) % a:
                    continue
                yield ((a, b), (0, d))


def theta_shapes_lattice(T: TropicalTorus, C: CurveClass) -> tuple[list[ThetaShape], int]:
    """Exhaustive shape list from the intermediate lattices, plus the number of walls.

    Each lattice M contributes the shape whose slope basis is dual to the
    obtuse superbase of M* under Q.  A superbase with a right angle means a
    zero edge length: the torus sits on a wall.
    """
    Q = _q_matrix(T, C)
    (c11, c12), (c21, c22) = C.matrix
    if c11 * c22 - c12 * c21 == 0 or not (Q[0][0] > 0 and Q[0][0] * Q[1][1] - Q[0][1] ** 2 > 0):
        return [], 0

    def form(x, y):
        return (x[0] * (Q[0][0] * y[0] + Q[0][1] * y[1]) + x[1] * (Q[1][0] * y[0] + Q[1][1] * y[1]))

    keys, walls = set(), 0
    for H in _hnf_lattices(C):
        V = transpose2(inverse2(H))
        f = [(V[0][0], V[1][0]), (V[0][1], V[1][1])]
        f.append((-f[0][0] - f[1][0], -f[0][1] - f[1][1]))
        while True:
            pair = next(((i, j) for i, j in ((0, 1), (0, 2), (1, 2)) if form(f[i], f[j]) > 0), None)
            if pair is None:
                break
            i, j = pair
            k = 3 - i - j
            f[i], f[k] = (-f[i][0], -f[i][1]), (f[i][0] - f[j][0], f[i][1] - f[j][1])
        if any(form(f[i], f[j]) == 0 for i, j in ((0, 1), (0, 2), (1, 2))):
            walls += 1
            continue
        Vb = ((f[0][0], -f[1][0]), (f[0][1], -f[1][1]))
        U = transpose2(inverse2(Vb))
        u1, u2 = (int(U[0][0]), int(U[1][0])), (int(U[0][1]), int(U[1][1]))
        keys.add(symmetry_key((u1, u2, (-u1[0] - u2[0], -u1[1] - u2[1]))))
    return [canonical_shape(T, C, k) for k in sorted(keys)], walls


# ---------------------------------------------------------------------------
# placing the marks


def place_marks(T: TropicalTorus, shape: ThetaShape, P1, P2) -> list[tuple[int, int, Fraction, Fraction, tuple]]:
    """All ways to put labeled points P1, P2 (N-coordinates) on two distinct edges.

    Returns (edge of P1, edge of P2, t1, t2, x_A) with x_A the position of A.
    Raises when a point lands on a vertex.
    """
    S = T.period
    S_inv = T.inverse
    d0 = (P1[0] - P2[0], P1[1] - P2[1])
    out = []
    for a, b in itertools.permutations(range(3), 2):
        ua, ub = shape.slopes[a], shape.slopes[b]
        la, lb = shape.lengths[a], shape.lengths[b]
        W = ((ua[0], -ub[0]), (ua[1], -ub[1]))
        W_inv = inverse2(W)
        corners = [matvec(S_inv, (p[0] - d0[0], p[1] - d0[1]))
                   for p in (matvec(W, (x, y)) for x in (0, la) for y in (0, lb))]
        lo = [floor(min(c[i] for c in corners)) for i in range(2)]
        hi = [floor(max(c[i] for c in corners)) + 1 for i in range(2)]
        for n0 in range(lo[0], hi[0] + 1):
            for n1 in range(lo[1], hi[1] + 1):
                Sn = matvec(S, (n0, n1))
                s1, s2 = matvec(W_inv, (d0[0] + Sn[0], d0[1] + Sn[1]))
                if 0 < s1 < la and 0 < s2 < lb:
                    xA = (P1[0] - s1 * ua[0], P1[1] - s1 * ua[1])
                    out.append((a, b, s1, s2, xA))
                elif 0 <= s1 <= la and 0 <= s2 <= lb:
                    raise NonGenericConfiguration(
                        "a point lies on a vertex of a solution; resample the points")
    return out


def realize(T: TropicalTorus, shape: ThetaShape, a: int, b: int, t1: Fraction, t2: Fraction,
            xA) -> MarkedCurve:
    D = shape.offset
    cA, kA = reduce_to_fundamental(xA, T)
    cB, kB = reduce_to_fundamental((xA[0] + D[0], xA[1] + D[1]), T)
    edges = []
    for u, l, lam in zip(shape.slopes, shape.lengths, shape.windings):
        w = gcd(*u)
        edges.append(Edge(0, 1, w, (u[0] // w, u[1] // w), l,
                          (lam[0] + kB[0] - kA[0], lam[1] + kB[1] - kA[1])))
    curve = ParamCurve(T, (cA, cB), tuple(edges))
    return MarkedCurve(curve, ((a, t1), (b, t2)))


# ---------------------------------------------------------------------------
# solution sets


@dataclass(frozen=True)
class SolutionSet:
    torus: TropicalTorus
    curve_class: CurveClass
    genus: int
    points: tuple[TorusPoint, ...]
    solutions: tuple[MarkedCurve, ...]
    bounds: SearchBounds
    certificate: dict = field(hash=False, compare=False)

    def __len__(self) -> int:
        return len(self.solutions)


def verify_solution(mc: MarkedCurve, C: CurveClass, points: Sequence[TorusPoint]) -> list[str]:
    """Every property a genus-2 solution must have; returns the failures."""
    c = mc.curve
    fails = []
    if validate(c):
        fails.append("inconsistent geometry")
    if not check_balanced(c):
        fails.append("unbalanced")
    if not is_simple(c)[0]:
        fails.append("not simple")
    if degree_class(c) != C or degree_class_crossings(c) != C:
        fails.append("wrong class")
    if not complement_is_tree(c, [e for e, _ in mc.marks])[0]:
        fails.append("complement of marks is not a tree")
    for (e, t), p in zip(mc.marks, points):
        if mark_position(c, e, t) != p:
            fails.append(f"mark on edge {e} misses its point")
    if not fails:
        if not check_parity(c):
            fails.append("parity")
        if not check_product_theorem(mc):
            fails.append("product theorem")
        if deformation_dimension(c) != 2:
            fails.append("deformation dimension")
    return fails


def enumerate_genus2(T: TropicalTorus, C: CurveClass, pts: Sequence[TorusPoint],
                     bounds: SearchBounds | None = None, backend: str | None = None,
                     verify: bool = True) -> SolutionSet:
    """All simple genus-2 curves in class C through two labeled points."""
    if not is_realizable(C, T):
        raise NotRealizable(f"class {C.matrix} is not realizable in this torus")
    pts = tuple(pts)
    if len(pts) != 2:
        raise DomainError("genus 2 needs exactly two points")
    if pts[0] == pts[1]:
        raise DomainError("the two points must be distinct")
    bounds = bounds or SearchBounds.default(C)
    shapes, hits = theta_shapes_scan(T, C, bounds, backend)
    oracle, walls = theta_shapes_lattice(T, C)
    if hits or walls:
        raise NonGenericConfiguration("the torus lies on a wall for this class (a zero edge length)")
    scan_keys = [s.key() for s in shapes]
    oracle_keys = [s.key() for s in oracle]
    if scan_keys != oracle_keys:
        missing = sorted(set(oracle_keys) - set(scan_keys))
        raise SearchIncomplete(f"slope scan missed {len(missing)} shapes; raise the bounds")
    P1, P2 = (T.to_plane(p.coords) for p in pts)
    solutions = []
    for shape in shapes:
        for a, b, t1, t2, xA in place_marks(T, shape, P1, P2):
            solutions.append(realize(T, shape, a, b, t1, t2, xA))
    from .serialize import marked_curve_text
    solutions.sort(key=marked_curve_text)
    failures = {}
    if verify:
        for i, mc in enumerate(solutions):
            f = verify_solution(mc, C, pts)
            if f:
                failures[i] = f
        if failures:
            raise TropabelError(f"solutions failed verification: {failures}")
    certificate = {
        "scan_wall_hits": hits,
        "lattice_walls": walls,
        "shapes": len(shapes),
        "shapes_match_lattice_search": True,
        "marks_interior": True,
        "automorphism_free": not any(s.has_automorphism() for s in shapes),
        "verified": verify,
        "backend": backend or kernels.BACKEND,
    }
    return SolutionSet(T, C, 2, pts, tuple(solutions), bounds, certificate)


# ---------------------------------------------------------------------------
# invariant tables


@dataclass(frozen=True)
class InvariantTable:
    genus: int
    curve_class: CurveClass
    per_gcd_N: dict = field(hash=False)
    per_gcd_BG: dict = field(hash=False)

    @property
    def M(self) -> int:
        return sum(self.per_gcd_N.values())

    @property
    def N(self) -> int:
        return sum(k * n for k, n in self.per_gcd_N.items())

    @property
    def BG(self) -> LaurentHalf:
        return sum(self.per_gcd_BG.values(), LaurentHalf())

    @property
    def R(self) -> LaurentHalf:
        return sum((k * p for k, p in self.per_gcd_BG.items()), LaurentHalf())

    def consistency(self) -> list[str]:
        fails = []
        if set(self.per_gcd_N) != set(self.per_gcd_BG):
            fails.append("gcd keys differ")
        for k in self.per_gcd_N:
            if self.per_gcd_BG.get(k, LaurentHalf()).eval_one() != self.per_gcd_N[k]:
                fails.append(f"BG_{k} at q=1 differs from N_{k}")
            if not self.per_gcd_BG.get(k, LaurentHalf()).is_symmetric():
                fails.append(f"BG_{k} is not symmetric")
        if self.BG.eval_one() != self.M:
            fails.append("BG at q=1 differs from M")
        if self.R.eval_one() != self.N:
            fails.append("R at q=1 differs from N")
        return fails

    def same_counts(self, other: "InvariantTable") -> bool:
        return (self.genus == other.genus and self.per_gcd_N == other.per_gcd_N
                and self.per_gcd_BG == other.per_gcd_BG)


def assemble_invariants(sol: SolutionSet) -> InvariantTable:
    ks = divisors(class_integral_length(sol.curve_class))
    N = {k: 0 for k in ks}
    BG = {k: LaurentHalf() for k in ks}
    for mc in sol.solutions:
        k = curve_gcd(mc.curve)
        N[k] = N.get(k, 0) + classical_multiplicity(mc.curve)
        BG[k] = BG.get(k, LaurentHalf()) + refined_multiplicity(mc.curve)
    return InvariantTable(sol.genus, sol.curve_class, N, BG)


def check_gcd_scaling(table: InvariantTable, primitive: InvariantTable, k: int) -> bool:
    """Compare the gcd-k part of ``table`` with the gcd-1 part of class C/k."""
    g = table.genus
    if primitive.curve_class.scaled(k) != table.curve_class:
        raise DomainError("the primitive table is not for C/k")
    n_ok = table.per_gcd_N.get(k, 0) == k ** (4 * g - 4) * primitive.per_gcd_N.get(1, 0)
    refined = quantum_integer(k * k) ** (2 * g - 2) * primitive.per_gcd_BG.get(1, LaurentHalf()).substitute(k * k)
    return n_ok and table.per_gcd_BG.get(k, LaurentHalf()) == refined


# ---------------------------------------------------------------------------
# closed forms for classes (1, n)


def _check_gn(g: int, n: int):
    if type(g) is not int or g < 2:
        raise DomainError("closed forms need g >= 2")
    if type(n) is not int or n < 1:
        raise DomainError("closed forms need n >= 1")


def closed_form_N_1n(g: int, n: int) -> int:
    _check_gn(g, n)
    return g * sum(prod(a * sigma1(a) for a in comp) for comp in compositions(n, g - 1))


def _divisor_refined(a: int) -> LaurentHalf:
    return sum((k * quantum_integer(a // k) ** 2 for k in divisors(a)), LaurentHalf())


def closed_form_BG_1n(g: int, n: int) -> LaurentHalf:
    _check_gn(g, n)
    total = LaurentHalf()
    for comp in compositions(n, g - 1):
        term = LaurentHalf.constant(1)
        for a in comp:
            term = term * _divisor_refined(a)
        total = total + term
    return g * total


def eisenstein_coefficients(g: int, n_max: int, sigma: Callable[[int], int] = sigma1) -> list[int]:
    """g times the coefficients of (sum m sigma(m) y^m)^(g-1), indices 0..n_max."""
    base = [0] + [m * sigma(m) for m in range(1, n_max + 1)]
    series = [1] + [0] * n_max
    for _ in range(g - 1):
        series = [sum(series[i] * base[n - i] for i in range(n + 1)) for n in range(n_max + 1)]
    return [g * x for x in series]


def eisenstein_series_check(g: int, n_max: int, sigma: Callable[[int], int] = sigma1) -> bool:
    coeffs = eisenstein_coefficients(g, n_max, sigma)
    return all(closed_form_N_1n(g, n) == coeffs[n] for n in range(1, n_max + 1))


# ---------------------------------------------------------------------------
# invariance


@dataclass
class RegressionResult:
    tables: dict
    skipped: list
    consistent: bool

    def __bool__(self) -> bool:
        return self.consistent


def invariance_regression(tori: TropicalTorus | Sequence[TropicalTorus], C: CurveClass,
                          seeds: Sequence[int], bounds: SearchBounds | None = None,
                          backend: str | None = None) -> RegressionResult:
    """Enumerate for every (torus, seed) and compare the invariant tables."""
    if isinstance(tori, TropicalTorus):
        tori = [tori]
    from .torus import sample_generic_points
    tables, skipped = {}, []
    for ti, T in enumerate(tori):
        ok = 0
        for seed in seeds:
            pts = sample_generic_points(T, 2, seed)
            try:
                sol = enumerate_genus2(T, C, pts, bounds, backend)
            except NonGenericConfiguration as exc:
                skipped.append((ti, seed, str(exc)))
                continue
            tables[(ti, seed)] = assemble_invariants(sol)
            ok += 1
        if ok < min(2, len(seeds)):
            return RegressionResult(tables, skipped, False)
    values = list(tables.values())
    consistent = bool(values) and all(t.same_counts(values[0]) for t in values[1:])
    return RegressionResult(tables, skipped, consistent)
