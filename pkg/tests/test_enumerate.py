from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import period
from tropabel import catalog
from tropabel.curve import canonical_key, curve_gcd
from tropabel.enumerate import (InvariantTable, SearchBounds, assemble_invariants,
                                check_gcd_scaling, closed_form_BG_1n, closed_form_N_1n,
                                eisenstein_coefficients, eisenstein_series_check,
                                enumerate_genus2, invariance_regression, theta_shapes_lattice,
                                theta_shapes_scan, verify_solution)
from tropabel.errors import DomainError, NonGenericConfiguration, NotRealizable
from tropabel.exactmath import LaurentHalf, quantum_integer, sigma1
from tropabel.multiplicity import classical_multiplicity
from tropabel.serialize import marked_curve_text
from tropabel.torus import CurveClass, TorusPoint, TropicalTorus, sample_generic_points

TWO = CurveClass(((2, 0), (0, 2)))
ONE = CurveClass(((1, 0), (0, 1)))
T1 = TropicalTorus(((9, 1), (1, 7)))
T2 = TropicalTorus(((F(23, 3), F(5, 7)), (F(5, 7), F(31, 5))))
BG_TWO = LaurentHalf({6: 2, 4: 4, 2: 18, 0: 40, -2: 18, -4: 4, -6: 2})


def solve(T, C, seed, bounds=None):
    return enumerate_genus2(T, C, sample_generic_points(T, 2, seed), bounds)


def table(T, C, seed):
    return assemble_invariants(solve(T, C, seed))


def test_against_frozen_brute_force(frozen):
    for case in frozen["genus2"]:
        T = TropicalTorus(period(case["period"]))
        C = CurveClass(tuple(tuple(r) for r in case["class"]))
        pts = [TorusPoint(tuple(F(x) for x in p)) for p in case["points"]]
        assert pts == list(sample_generic_points(T, 2, case["seed"]))
        sol = enumerate_genus2(T, C, pts)
        t = assemble_invariants(sol)
        assert (len(sol.solutions), t.N, t.M) == (case["solutions"], case["N"], case["M"]), case


@pytest.mark.parametrize("T", [T1, T2], ids=["T1", "T2"])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_two_by_two(T, seed):
    sol = solve(T, TWO, seed)
    t = assemble_invariants(sol)
    assert len(sol.solutions) == 22
    assert t.per_gcd_N == {1: 56, 2: 32}
    assert t.N == 120 and t.M == 88
    assert t.BG == BG_TWO
    assert t.per_gcd_BG[2] == 2 * quantum_integer(4) ** 2
    assert t.consistency() == []
    assert all(v for v in sol.certificate.values() if isinstance(v, bool))


def test_type_decomposition_matches_catalog():
    # group by curve-type key (slopes and weights only, not lengths)
    sol = solve(T1, TWO, 1)
    counts = {}
    for mc in sol.solutions:
        key = tuple(sorted((e.weight, tuple(sorted([e.slope, (-e.slope[0], -e.slope[1])])))
                           for e in mc.curve.edges))
        counts.setdefault(key, []).append(classical_multiplicity(mc.curve) * curve_gcd(mc.curve))
    rows = sorted((len(v), v[0]) for v in counts.values())
    expected = sorted((marks, d * m) for d, m, marks in catalog.DIAG2_TABLE)
    assert rows == expected


def test_class_one():
    sol = solve(T1, ONE, 1)
    t = assemble_invariants(sol)
    assert len(sol.solutions) == 2
    # one curve up to translation, met with the two labelings of the points
    shapes = {tuple(sorted((e.length, e.weight) for e in mc.curve.edges)) for mc in sol.solutions}
    assert len(shapes) == 1
    assert len({canonical_key(mc.curve) for mc in sol.solutions}) == 2
    assert t.per_gcd_N == {1: 2}
    assert t.per_gcd_BG[1] == LaurentHalf.constant(2)


def test_gcd_scaling():
    assert check_gcd_scaling(table(T1, TWO, 1), table(T1, ONE, 1), 2)
    with pytest.raises(DomainError):
        check_gcd_scaling(table(T1, TWO, 1), table(T1, TWO, 1), 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_one_n_closed_forms(n):
    C = CurveClass(((1, 0), (0, n)))
    T = TropicalTorus(((F(11, 2), F(3, 7)), (F(3 * n, 7), F(13, 3))))
    t = table(T, C, 1)
    assert t.N == closed_form_N_1n(2, n) == 2 * n * sigma1(n)
    assert t.BG == closed_form_BG_1n(2, n)


def test_closed_form_examples():
    assert closed_form_N_1n(2, 1) == 2
    assert closed_form_N_1n(3, 2) == 3
    assert closed_form_N_1n(3, 1) == 0
    assert closed_form_BG_1n(2, 1) == LaurentHalf.constant(2)
    assert closed_form_BG_1n(2, 2) == 2 * LaurentHalf.monomial(2) + LaurentHalf.constant(8) + 2 * LaurentHalf.monomial(-2)
    for g in range(2, 5):
        for n in range(1, 9):
            assert closed_form_BG_1n(g, n).eval_one() == closed_form_N_1n(g, n)
    with pytest.raises(DomainError):
        closed_form_N_1n(1, 3)
    with pytest.raises(DomainError):
        closed_form_N_1n(2, 0)


def test_eisenstein(frozen):
    for g in range(2, 6):
        assert eisenstein_series_check(g, 10)
        assert eisenstein_coefficients(g, 10) == frozen["eisenstein"][str(g)]
    assert not eisenstein_series_check(2, 10, lambda m: sigma1(m) + (m == 3))


def test_invariance_regression():
    r = invariance_regression([T1, T2], TWO, [1, 2, 3])
    assert r and not r.skipped and len(r.tables) == 6
    C = CurveClass(((1, 0), (0, 2)))
    tori = [TropicalTorus(((F(11, 2), F(3, 7)), (F(6, 7), F(13, 3)))),
            TropicalTorus(((F(17, 3), F(2, 5)), (F(4, 5), F(29, 7))))]
    r = invariance_regression(tori, C, [1, 2, 3])
    assert r and next(iter(r.tables.values())).N == 12


def test_doubled_bounds_identical():
    for T, C in [(T1, TWO), (T2, TWO), (T1, ONE)]:
        for seed in (1, 2, 3):
            sol = solve(T, C, seed)
            big = solve(T, C, seed, sol.bounds.doubled())
            assert [marked_curve_text(m) for m in big.solutions] == [marked_curve_text(m) for m in sol.solutions]


def test_scan_matches_lattice_search():
    for T, C in [(T1, TWO), (T2, TWO), (T1, ONE)]:
        shapes, hits = theta_shapes_scan(T, C)
        oracle, walls = theta_shapes_lattice(T, C)
        assert hits == walls == 0
        assert [s.key() for s in shapes] == [s.key() for s in oracle]


def test_every_solution_verifies():
    sol = solve(T2, TWO, 2)
    assert all(verify_solution(mc, TWO, sol.points) == [] for mc in sol.solutions)


def test_wall_torus_rejected():
    T = TropicalTorus(((8, 2), (2, 8)))
    with pytest.raises(NonGenericConfiguration):
        solve(T, TWO, 1)


def test_errors():
    with pytest.raises(NotRealizable):
        solve(T1, CurveClass(((1, 0), (0, 2))), 1)
    p = sample_generic_points(T1, 2, 1)
    with pytest.raises(DomainError):
        enumerate_genus2(T1, TWO, (p[0], p[0]))
    with pytest.raises(DomainError):
        enumerate_genus2(T1, TWO, p[:1])
    with pytest.raises(DomainError):
        SearchBounds(0, 3)


def test_table_consistency_detects_tampering():
    t = table(T1, TWO, 1)
    bad = InvariantTable(2, TWO, {1: 56, 2: 33}, t.per_gcd_BG)
    assert bad.consistency()


@given(st.integers(1, 10 ** 6))
def test_seeds_agree_on_counts(seed):
    t = assemble_invariants(enumerate_genus2(T1, ONE, sample_generic_points(T1, 2, seed)))
    assert t.per_gcd_N == {1: 2}
