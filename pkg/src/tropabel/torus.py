"""Tropical tori, curve classes and fundamental-domain coordinates."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Sequence

from .errors import DomainError
from .exactmath import parse_rational, rank

Vec = tuple[Fraction, Fraction]
Mat2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

POINT_DENOMINATOR = 2147483647


def _mat(rows: Sequence[Sequence], conv) -> tuple:
    rows = tuple(tuple(conv(x) for x in r) for r in rows)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise DomainError("expected a 2x2 matrix")
    return rows


def det2(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def matvec(M, v) -> tuple:
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def matmul2(A, B) -> tuple:
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2))


def transpose2(A) -> tuple:
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


def inverse2(A) -> Mat2:
    d = Fraction(A[0][0] * A[1][1] - A[0][1] * A[1][0])
    if d == 0:
        raise DomainError("singular 2x2 matrix")
    return ((A[1][1] / d, -A[0][1] / d), (-A[1][0] / d, A[0][0] / d))


@dataclass(frozen=True)
class TropicalTorus:
    """Quotient of N_R = Q^2 by the lattice spanned by the columns of ``period``."""

    period: Mat2

    def __post_init__(self):
        object.__setattr__(self, "period", _mat(self.period, parse_rational))
        if det2(*transpose2(self.period)) == 0:
            raise DomainError("period matrix must be invertible")

    @property
    def inverse(self) -> Mat2:
        return inverse2(self.period)

    def to_plane(self, coords: Sequence) -> Vec:
        return matvec(self.period, coords)

    def to_lattice_coords(self, p: Sequence) -> Vec:
        return matvec(self.inverse, p)


@dataclass(frozen=True)
class CurveClass:
    """Integer 2x2 matrix, read as a map from the dual of the period lattice to N."""

    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        def conv(x):
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    return int(x)
                raise DomainError(f"class entries must be integers, got {x!r}")
            return x
        object.__setattr__(self, "matrix", _mat(self.matrix, conv))

    @classmethod
    def from_flat(cls, a: int, b: int, c: int, d: int) -> "CurveClass":
        return cls(((a, b), (c, d)))

    def flat(self) -> tuple[int, int, int, int]:
        (a, b), (c, d) = self.matrix
        return a, b, c, d

    def scaled(self, k: int) -> "CurveClass":
        return CurveClass(tuple(tuple(k * x for x in r) for r in self.matrix))

    def divided(self, k: int) -> "CurveClass":
        if any(x % k for x in self.flat()):
            raise DomainError(f"class is not divisible by {k}")
        return CurveClass(tuple(tuple(x // k for x in r) for r in self.matrix))


@dataclass(frozen=True)
class TorusPoint:
    """A point of the torus in lattice coordinates, both in [0, 1)."""

    coords: Vec

    def __post_init__(self):
        c = tuple(parse_rational(x) for x in self.coords)
        if len(c) != 2 or not all(0 <= x < 1 for x in c):
            raise DomainError(f"torus point coordinates must lie in [0,1): {self.coords!r}")
        object.__setattr__(self, "coords", c)


def is_realizable(C: CurveClass, T: TropicalTorus) -> bool:
    """Whether C S^T is symmetric."""
    P = matmul2(C.matrix, transpose2(T.period))
    return P[0][1] == P[1][0]


def class_integral_length(C: CurveClass) -> int:
    g = 0
    for x in C.flat():
        g = gcd(g, x)
    if g == 0:
        raise DomainError("the zero class has no integral length")
    return g


def realizability_constraint(T: TropicalTorus) -> tuple[Fraction, ...]:
    """Row r with r . (c11, c12, c21, c22) = 0 iff the class is realizable in T."""
    (s11, s12), (s21, s22) = T.period
    return (s21, s22, -s11, -s12)


def realizable_lattice_rank(T: TropicalTorus) -> int:
    """Rank of the lattice of integer classes realizable in T.

    The condition is a single rational linear equation on Z^4, so for a
    rational period matrix the answer is always 3.
    """
    return 4 - rank([realizability_constraint(T)])


def reduce_to_fundamental(p: Sequence, T: TropicalTorus) -> tuple[TorusPoint, tuple[int, int]]:
    """Split ``p`` (N-coordinates) as ``S (coords + winding)`` with coords in [0,1)^2."""
    lam = T.to_lattice_coords(tuple(parse_rational(x) for x in p))
    k = (floor(lam[0]), floor(lam[1]))
    return TorusPoint((lam[0] - k[0], lam[1] - k[1])), k


def sample_generic_points(T: TropicalTorus, g: int, seed: int) -> list[TorusPoint]:
    if type(g) is not int or g < 1:
        raise DomainError("need at least one point")
    rng = random.Random(seed)
    P = POINT_DENOMINATOR
    return [TorusPoint((Fraction(rng.randrange(P), P), Fraction(rng.randrange(P), P)))
            for _ in range(g)]
