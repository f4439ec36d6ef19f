import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import determinantal_divisors
from tropabel.errors import DomainError
from tropabel.exactmath import (IntMatrix, LaurentHalf, compositions, determinant,
                                laurent_eval_one, laurent_mul, laurent_substitute,
                                maximal_minor_gcd, maximal_minor_gcd_bruteforce,
                                format_rational, parse_rational, quantum_integer, rank,
                                sigma1, smith_normal_form)

q = LaurentHalf.monomial


def test_quantum_integer_examples():
    assert quantum_integer(1) == 1
    assert quantum_integer(2) == q(1) + q(-1)
    assert quantum_integer(4) == q(3) + q(1) + q(-1) + q(-3)


def test_quantum_integer_matches_long_division(frozen):
    for a, coeffs in frozen["quantum"].items():
        assert quantum_integer(int(a)).coeffs == {int(k): v for k, v in coeffs.items()}


@pytest.mark.parametrize("a", [0, -3])
def test_quantum_integer_domain(a):
    with pytest.raises(DomainError):
        quantum_integer(a)


@pytest.mark.parametrize("a", range(1, 51))
def test_quantum_integer_shape(a):
    p = quantum_integer(a)
    assert p.eval_one() == a
    assert p.is_symmetric()
    assert len(p) == a and set(p.coeffs.values()) == {1}


def test_laurent_mul_examples():
    two = quantum_integer(2)
    assert laurent_mul(two, two) == q(2) + 2 + q(-2)
    p = q(3) * 5 + q(-1)
    assert laurent_mul(p, LaurentHalf.constant(1)) == p
    four = quantum_integer(4)
    expected = LaurentHalf({6: 1, 4: 2, 2: 3, 0: 4, -2: 3, -4: 2, -6: 1})
    assert laurent_mul(four, four) == expected


def test_eval_one_examples():
    for a in range(1, 11):
        assert laurent_eval_one(quantum_integer(a)) == a
    assert laurent_eval_one(q(2) + 2 + q(-2)) == 4
    assert laurent_eval_one(LaurentHalf()) == 0


def test_substitute_examples():
    assert laurent_substitute(quantum_integer(2), 4) == q(4) + q(-4)
    p = q(3) * 2 + q(-5)
    assert laurent_substitute(p, 1) == p
    scaled = quantum_integer(2 ** 2) ** (2 * 2 - 2) * laurent_substitute(LaurentHalf.constant(1), 4)
    four = quantum_integer(4)
    assert scaled == laurent_mul(four, four)
    assert scaled == LaurentHalf({6: 1, 4: 2, 2: 3, 0: 4, -2: 3, -4: 2, -6: 1})


def test_laurent_zero_coefficients_dropped_and_str():
    p = q(2) - q(2) + 3
    assert p.coeffs == {0: 3}
    assert str(q(3) + q(-3)) == "q^(3/2) + q^(-3/2)"
    assert str(2 * q(2) - 1) == "2q - 1"
    assert str(LaurentHalf()) == "0"


laurents = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(LaurentHalf)


@given(laurents, laurents)
def test_product_of_symmetric_is_symmetric(a, b):
    sa = a + LaurentHalf({-k: v for k, v in a.items()})
    sb = b + LaurentHalf({-k: v for k, v in b.items()})
    assert (sa * sb).is_symmetric()
    assert (sa * sb).eval_one() == sa.eval_one() * sb.eval_one()


@given(laurents, st.integers(1, 9))
def test_substitute_preserves_value_at_one(p, m):
    assert laurent_substitute(p, m).eval_one() == laurent_eval_one(p)


def test_snf_examples(frozen):
    assert smith_normal_form([[2, 0], [0, 6]]) == (tuple(frozen["snf"]["diag_2_6"]), 2)
    assert smith_normal_form([[2, 4], [6, 8]]) == (tuple(frozen["snf"]["2_4_6_8"]), 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ((), 0)


def test_maximal_minor_examples():
    assert maximal_minor_gcd([[1, 0], [0, 1]]) == 1
    assert maximal_minor_gcd([[2], [4]]) == 2
    assert maximal_minor_gcd_bruteforce([[2], [4]]) == 2
    assert maximal_minor_gcd([[1, 2], [2, 4], [3, 6]]) == 0


def _random_matrix(rng):
    m, n = rng.randint(1, 6), rng.randint(1, 8)
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]


def test_snf_against_minors_random():
    rng = random.Random(20240601)
    full = 0
    for _ in range(200):
        M = _random_matrix(rng)
        divisors, r = smith_normal_form(M)
        assert all(b % a == 0 for a, b in zip(divisors, divisors[1:]))
        assert all(d > 0 for d in divisors)
        assert maximal_minor_gcd(M) == maximal_minor_gcd_bruteforce(M)
        if r == min(len(M), len(M[0])):
            full += 1
            prod = 1
            for d in divisors:
                prod *= d
            assert prod == maximal_minor_gcd_bruteforce(M)
    assert full > 100


def test_snf_against_determinantal_divisors():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        assert smith_normal_form(M)[0] == determinantal_divisors(M)


def _unimodular(rng, n):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U = [[-x for x in r] for r in U]
            continue
        k = rng.randint(-3, 3)
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
    return U


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def test_snf_unimodular_invariance():
    rng = random.Random(99)
    for _ in range(100):
        M = _random_matrix(rng)
        U = _unimodular(rng, len(M))
        V = _unimodular(rng, len(M[0]))
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        assert smith_normal_form(_mul(_mul(U, M), V)) == smith_normal_form(M)


def test_determinant_matches_cofactor():
    from oracles import det_cofactor
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        M = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert determinant(M) == det_cofactor(M)


def test_rank_rational():
    assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1
    assert rank([[Fraction(1, 3), 0], [0, Fraction(2, 7)]]) == 2


def test_intmatrix_roundtrip():
    M = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert M.shape == (2, 3)
    assert M.transpose().tolist() == [[1, 4], [2, 5], [3, 6]]
    assert (M @ M.transpose()).tolist() == [[14, 32], [32, 77]]
    with pytest.raises(DomainError):
        IntMatrix(2, 2, (1, 2, 3))


def test_sigma1(frozen):
    assert sigma1(1) == 1 and sigma1(6) == 12 and sigma1(4) == 7
    for n, v in frozen["sigma1"].items():
        assert sigma1(int(n)) == v
    with pytest.raises(DomainError):
        sigma1(0)


def test_compositions():
    from oracles import compositions_naive
    assert set(compositions(3, 2)) == {(1, 2), (2, 1)}
    assert compositions(7, 1) == [(7,)]
    assert len(compositions(10, 4)) == comb(9, 3) == 84
    assert compositions(2, 3) == []
    for n in range(1, 8):
        for k in range(1, 5):
            assert sorted(compositions(n, k)) == compositions_naive(n, k)


def test_rational_text():
    assert parse_rational("-7/21") == Fraction(-1, 3)
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(DomainError):
        parse_rational("1/0")
    with pytest.raises(DomainError):
        parse_rational(0.5)
