import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tropabel import catalog
from tropabel.curve import (MarkedCurve, ParamCurve, complement_is_tree, curve_from_plane,
                            curve_gcd, genus, scale_curve, scale_marked, vertex_slopes)
from tropabel.errors import InvalidCurve, InvalidMarking
from tropabel.exactmath import LaurentHalf, quantum_integer
from tropabel.multiplicity import (build_theta, check_parity, check_product_theorem,
                                   classical_multiplicity, complex_multiplicity, curve_report,
                                   nishinou_multiplicity, refined_multiplicity, theta_torsion,
                                   vertex_multiplicity)
from tropabel.torus import TropicalTorus, det2

Q = LaurentHalf.monomial
DOUBLED = catalog.doubled_theta


def simple_curves():
    out = []
    for c in catalog.all_curves().values():
        out.append(c.curve if isinstance(c, MarkedCurve) else c)
    return out


def theta_markings(c: ParamCurve):
    """Both marks at edge midpoints, every ordered pair of distinct edges."""
    for a, b in itertools.permutations(range(len(c.edges)), 2):
        yield MarkedCurve(c, ((a, c.edges[a].length / 2), (b, c.edges[b].length / 3)))


def marked_pairs():
    pairs = []
    thetas = catalog.diag2_types() + [catalog.square_class_one(), catalog.skew_theta(),
                                      catalog.tripod_theta(), DOUBLED().curve]
    for c in thetas:
        pairs.extend(theta_markings(c))
    pairs += [DOUBLED(), catalog.skew_theta_marked_weighted(), catalog.skew_theta_marked_light()]
    return pairs


def test_vertex_examples():
    T = TropicalTorus(((5, 0), (0, 5)))
    assert abs(det2((1, 0), (0, 1))) == 1
    c = DOUBLED().curve
    assert [vertex_multiplicity(c, v) for v in range(2)] == [4, 4]
    assert sorted(vertex_slopes(c, 0)) == sorted([(2, 2), (-2, 0), (0, -2)])
    flat = curve_from_plane(T, [(1, 1), (2, 1)], [
        (0, 1, 1, (1, 0)), (0, 1, 2, (6, 0)), (1, 0, 3, (4, 0))])
    assert vertex_multiplicity(flat, 0) == 0
    with pytest.raises(InvalidCurve):
        classical_multiplicity(flat)


def test_vertex_multiplicity_pair_independent():
    for c in simple_curves():
        for v in range(c.n_vertices):
            s = vertex_slopes(c, v)
            if len(s) == 3:
                assert len({abs(det2(a, b)) for a, b in itertools.combinations(s, 2)}) == 1


def test_non_trivalent_vertex_rejected():
    from tropabel.curve import Edge
    T = TropicalTorus(((5, 0), (0, 5)))
    four = ParamCurve(T, ((F(0), F(0)),), (Edge(0, 0, 1, (1, 0), 5, (1, 0)),
                                           Edge(0, 0, 1, (0, 1), 5, (0, 1))))
    with pytest.raises(InvalidCurve):
        vertex_multiplicity(four, 0)


def test_doubled_theta_values():
    mc = DOUBLED()
    assert classical_multiplicity(mc.curve) == 16
    assert complex_multiplicity(mc.curve) == 32
    assert nishinou_multiplicity(mc) == 32
    assert nishinou_multiplicity(mc, "minors") == 32
    assert refined_multiplicity(mc.curve) == quantum_integer(4) ** 2
    assert str(refined_multiplicity(mc.curve)) == "q^3 + 2q^2 + 3q + 4 + 3q^-1 + 2q^-2 + q^-3"
    assert check_parity(mc.curve)


def test_two_markings_both_give_four():
    a, b = catalog.skew_theta_marked_weighted(), catalog.skew_theta_marked_light()
    ta, tb = build_theta(a), build_theta(b)
    assert theta_torsion(ta) == 1 and [p.weight for p in ta.pieces].count(2) == 2
    assert theta_torsion(tb) == 2 and [p.weight for p in tb.pieces].count(2) == 1
    assert nishinou_multiplicity(a) == nishinou_multiplicity(b) == 4


def test_refined_examples():
    two_twos = quantum_integer(2) ** 2
    assert two_twos == Q(2) + LaurentHalf.constant(2) + Q(-2)
    assert refined_multiplicity(catalog.square_class_one()) == LaurentHalf.constant(1)


def test_refined_agrees_with_classical():
    for c in simple_curves():
        r = refined_multiplicity(c)
        assert r.eval_one() == classical_multiplicity(c)
        assert r.is_symmetric()


@pytest.mark.parametrize("k", [2, 3])
def test_scaling_laws(k):
    for c in [catalog.square_class_one(), catalog.skew_theta(), catalog.tripod_theta()] + catalog.diag2_types():
        g = genus(c)
        s = scale_curve(c, k)
        assert classical_multiplicity(s) == k ** (4 * g - 4) * classical_multiplicity(c)
        assert refined_multiplicity(s) == (quantum_integer(k * k) ** (2 * g - 2)
                                           * refined_multiplicity(c).substitute(k * k))
        for mc in theta_markings(c):
            smc = scale_marked(mc, k)
            assert nishinou_multiplicity(smc) == k ** (4 * g - 3) * nishinou_multiplicity(mc)
            assert check_product_theorem(smc)


def test_product_theorem_on_catalog_pairs():
    pairs = marked_pairs()
    assert len(pairs) >= 30
    for mc in pairs:
        assert check_product_theorem(mc), mc


def test_product_theorem_higher_genus():
    c, cuts = catalog.lifting_example()
    mc = MarkedCurve(c, cuts.points)
    assert complement_is_tree(c, [e for e, _ in mc.marks])[0]
    assert check_product_theorem(mc)


def test_theta_shape_and_rank():
    for mc in marked_pairs():
        g = genus(mc.curve)
        th = build_theta(mc)
        assert th.shape == (6 * g - 3, 6 * g - 4)
        assert sum(1 for t in th.row_tags if t[0] == "mark") == 2 * g


def test_phi_kills_theta():
    for mc in marked_pairs():
        th = build_theta(mc)
        phi = th.phi(curve_gcd(mc.curve))
        rows = th.matrix.tolist()
        assert any(phi)
        for j in range(th.matrix.cols):
            assert sum(p * r[j] for p, r in zip(phi, rows)) == 0


@given(st.integers(0, 2 ** 32), st.integers(0, 37))
def test_orientation_independence(seed, which):
    pairs = marked_pairs()
    mc = pairs[which % len(pairs)]
    n_pieces = len(build_theta(mc).pieces)
    rng = random.Random(seed)
    flips = frozenset(j for j in range(n_pieces) if rng.random() < 0.5)
    assert nishinou_multiplicity(mc, flips=flips) == nishinou_multiplicity(mc)
    assert nishinou_multiplicity(mc, "minors", flips) == nishinou_multiplicity(mc)


def test_marking_errors():
    c = catalog.square_class_one()
    with pytest.raises(InvalidMarking):
        build_theta(MarkedCurve(c, ((0, F(1, 2)),)))
    with pytest.raises(InvalidMarking):
        build_theta(MarkedCurve(c, ((0, F(1, 2)), (0, F(1)))))


def test_parity():
    for c in simple_curves():
        assert check_parity(c)


def test_report_keys():
    rep = curve_report(DOUBLED().curve, DOUBLED())
    assert rep["vertex_multiplicities"] == [4, 4]
    assert rep["gcd"] == 2 and rep["complex_product"] == 32
    assert rep["complex_theta"] == rep["complex_minors"] == 32 and rep["agree"]
