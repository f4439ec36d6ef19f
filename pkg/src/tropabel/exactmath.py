"""Exact arithmetic: rationals, integer matrices, Smith forms and Laurent polynomials in q^(1/2).

Rationals are :class:`fractions.Fraction` throughout.  Integer matrices are
small immutable row-major containers; every routine here is exact and never
touches floating point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError

Rational = Fraction


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints and Fractions pass through)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise DomainError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise DomainError(f"rationals are serialized as strings, got {text!r}")
    try:
        num, sep, den = text.strip().partition("/")
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {text!r}") from exc
    return value


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise DomainError("entry count does not match the shape")
        if any(type(x) is not int for x in self.entries):
            raise DomainError("IntMatrix entries must be Python ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)]) \
            if self.rows and self.cols else IntMatrix(self.cols, self.rows, ())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("shape mismatch")
        return IntMatrix.from_rows([
            [sum(self[i, k] * other[k, j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


def _as_lists(M: IntMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    if isinstance(M, IntMatrix):
        return M.tolist()
    return [[int(x) for x in r] for r in M]


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Elementary divisors of an integer matrix.

    Returns ``(divisors, rank)`` where ``divisors`` lists the nonzero diagonal
    entries ``d_1 | d_2 | ...`` of the Smith form.  The pivot is always the
    smallest nonzero entry of the active block, which keeps entries from
    growing on the sparse matrices this package produces.
    """
    A = _as_lists(M)
    m = len(A)
    n = len(A[0]) if m else 0
    divisors: list[int] = []
    t = 0
    while t < min(m, n):
        while True:
            pivot = None
            best = 0
            for i in range(t, m):
                Ai = A[i]
                for j in range(t, n):
                    v = Ai[j]
                    if v and (pivot is None or abs(v) < best):
                        pivot, best = (i, j), abs(v)
                        if best == 1:
                            break
                if best == 1:
                    break
            if pivot is None:
                return tuple(divisors), len(divisors)
            i, j = pivot
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for r in A:
                    r[t], r[j] = r[j], r[t]
            p = A[t][t]
            At = A[t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    Ai = A[i]
                    for j in range(t, n):
                        Ai[j] -= q * At[j]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = At[j] // p
                if q:
                    for r in A[t:]:
                        r[j] -= q * r[t]
                if At[j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            Ab = A[bad]
            for j in range(t, n):
                At[j] += Ab[j]
        divisors.append(abs(A[t][t]))
        t += 1
    return tuple(divisors), len(divisors)


def determinant(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    A = _as_lists(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise DomainError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            Ai, Ak = A[i], A[k]
            for j in range(k + 1, n):
                Ai[j] = (Ai[j] * akk - aik * Ak[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def maximal_minor_gcd(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """gcd of the maximal minors, read off the Smith form.

    Zero unless the matrix has full rank ``min(rows, cols)``.
    """
    A = _as_lists(M)
    m = len(A)
    n = len(A[0]) if m else 0
    divisors, rank = smith_normal_form(A)
    if rank < min(m, n):
        return 0
    return reduce(lambda x, y: x * y, divisors, 1)


def maximal_minor_gcd_bruteforce(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Same quantity by enumerating every maximal minor (small matrices only)."""
    A = _as_lists(M)
    if A and len(A) < len(A[0]):
        A = [list(col) for col in zip(*A)]
    m = len(A)
    n = len(A[0]) if m else 0
    g = 0
    for rows in itertools.combinations(range(m), n):
        g = gcd(g, determinant([A[i] for i in rows]))
        if g == 1:
            break
    return g


def rank(M: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over the rationals of a matrix with rational or integer entries."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    scaled = []
    for r in rows:
        den = reduce(lcm, (Fraction(x).denominator for x in r), 1)
        scaled.append([int(Fraction(x) * den) for x in r])
    return smith_normal_form(scaled)[1]


def kernel_dimension(M: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> int:
    rows = [list(r) for r in M]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return n - rank(rows)


# ---------------------------------------------------------------------------
# Laurent polynomials in q^(1/2)


class LaurentHalf:
    """Integer Laurent polynomial in ``q^(1/2)``.

    Exponents are stored doubled, so ``q^(3/2)`` is key ``3``.  Zero
    coefficients are never stored; instances are immutable.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for k, v in (coeffs or {}).items():
            if type(k) is not int or type(v) is not int:
                raise DomainError("LaurentHalf keys and coefficients must be ints")
            if v:
                clean[k] = v
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "LaurentHalf":
        return cls({0: c})

    @classmethod
    def monomial(cls, doubled_exponent: int, coeff: int = 1) -> "LaurentHalf":
        return cls({doubled_exponent: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._coeffs.items())

    def coefficient(self, doubled_exponent: int) -> int:
        return self._coeffs.get(doubled_exponent, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    @staticmethod
    def _lift(other) -> "LaurentHalf":
        if isinstance(other, LaurentHalf):
            return other
        if type(other) is int:
            return LaurentHalf.constant(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __add__(self, other) -> "LaurentHalf":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentHalf(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentHalf":
        return LaurentHalf({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other) -> "LaurentHalf":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentHalf":
        return (-self) + other

    def __mul__(self, other) -> "LaurentHalf":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentHalf(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentHalf":
        if type(n) is not int or n < 0:
            raise DomainError("only non-negative integer powers")
        result = LaurentHalf.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_one(self) -> int:
        return sum(self._coeffs.values())

    def substitute(self, m: int) -> "LaurentHalf":
        """The polynomial in ``q^m``: every exponent is multiplied by ``m``."""
        if type(m) is not int or m < 1:
            raise DomainError("substitution exponent must be a positive integer")
        return LaurentHalf({k * m: v for k, v in self._coeffs.items()})

    def is_symmetric(self) -> bool:
        return all(self._coeffs.get(-k) == v for k, v in self._coeffs.items())

    def __repr__(self) -> str:
        return f"LaurentHalf({self._coeffs!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for k, v in sorted(self._coeffs.items(), reverse=True):
            if k == 0:
                mono = ""
            else:
                exp = str(k // 2) if k % 2 == 0 else f"({k}/2)"
                mono = "q" if exp == "1" else f"q^{exp}"
            if not mono:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}{mono}"
            terms.append(("-" if v < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def quantum_integer(a: int) -> LaurentHalf:
    """``[a]_q = q^((a-1)/2) + q^((a-3)/2) + ... + q^(-(a-1)/2)``."""
    if type(a) is not int or a < 1:
        raise DomainError(f"quantum integers are defined for a >= 1, got {a!r}")
    return LaurentHalf({k: 1 for k in range(-(a - 1), a, 2)})


def laurent_mul(p: LaurentHalf, r: LaurentHalf) -> LaurentHalf:
    return p * r


def laurent_eval_one(p: LaurentHalf) -> int:
    return p.eval_one()


def laurent_substitute(p: LaurentHalf, m: int) -> LaurentHalf:
    return p.substitute(m)


def laurent_sum(items: Iterable[LaurentHalf]) -> LaurentHalf:
    return sum(items, LaurentHalf())


# ---------------------------------------------------------------------------
# arithmetic functions


def sigma1(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    if type(n) is not int or n < 1:
        raise DomainError(f"sigma1 needs a positive integer, got {n!r}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError("divisors of a positive integer only")
    return [d for d in range(1, n + 1) if n % d == 0]


def compositions(n: int, parts: int) -> list[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``n``."""
    if parts < 1:
        raise DomainError("need at least one part")
    if n < parts:
        return []
    out = []
    for cuts in itertools.combinations(range(1, n), parts - 1):
        bounds = (0,) + cuts + (n,)
        out.append(tuple(bounds[i + 1] - bounds[i] for i in range(parts)))
    return out
