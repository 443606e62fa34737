import numpy as np
import pytest

from conftest import greens_poly
from sbcubature.curves import Bezier, Segment
from sbcubature.errors import EvaluationError
from sbcubature.region import CenterPolicy, CurvedTriangle, Region, polygon
from sbcubature.sbc import (
    edge_data,
    generate_rule,
    integrate,
    min_orders_curved,
    min_orders_polygon,
    sb_jacobian,
    sb_map,
)
from sbcubature.testfns import _POLY_MONOMIALS, POLYGON_NAMES, lookup


def tri(curve, x0):
    return CurvedTriangle(curve=curve, x0=np.asarray(x0, dtype=float))


def test_sb_map_endpoints():
    t = tri(Segment((1, 0), (1, 1)), (0, 0))
    np.testing.assert_allclose(sb_map(t, 0.0, 0.3), [0.0, 0.0])
    np.testing.assert_allclose(sb_map(t, 1.0, 0.5), [1.0, 0.5])
    np.testing.assert_allclose(sb_map(t, 0.5, 0.5), [0.5, 0.25])


def test_sb_jacobian():
    t = tri(Segment((1, 0), (1, 1)), (0, 0))
    assert sb_jacobian(t, 0.0, 0.5) == 0.0
    assert sb_jacobian(t, 1.0, 0.2) == pytest.approx(1.0)


def test_edge_data_geometry():
    ed = edge_data(Segment((1.0, -0.5), (1.0, 0.5)), np.zeros(2))
    assert ed.ell == pytest.approx(1.0)
    assert ed.tau1 == pytest.approx(-0.5)
    assert ed.tau2 == pytest.approx(0.5)
    assert ed.delta_tau == pytest.approx(1.0)
    np.testing.assert_allclose(ed.n, [1.0, 0.0])


def test_edge_data_signed_projection_straddles_foot():
    # x0's perpendicular foot falls inside the edge: tau1 < 0 < tau2
    ed = edge_data(Segment((-2.0, 1.0), (3.0, 1.0)), np.zeros(2))
    assert ed.tau1 < 0.0 < ed.tau2
    assert ed.delta_tau == pytest.approx(5.0)


def test_unit_square_centroid_rule(unit_square):
    rule = generate_rule(unit_square, CenterPolicy.VERTEX_AVERAGE, 1, 1)
    assert len(rule) == 4
    np.testing.assert_allclose(rule.weights, 0.25)
    assert np.sum(rule.weights) == pytest.approx(1.0)


def test_vertex_center_drops_incident_edges(unit_square):
    rule = generate_rule(unit_square, CenterPolicy.vertex(0), 2, 2)
    assert set(rule.curve_index) == {1, 2}
    assert np.sum(rule.weights) == pytest.approx(1.0, rel=1e-14)


def test_monomial_over_square(unit_square):
    v = integrate(unit_square, CenterPolicy.VERTEX_AVERAGE, lambda x, y: x**2 * y, 3, 2)
    assert v == pytest.approx(1.0 / 6.0, abs=1e-14)


def test_min_orders():
    assert min_orders_polygon(0) == (1, 1)
    assert min_orders_polygon(3) == (3, 2)
    assert min_orders_polygon(5) == (4, 3)
    assert min_orders_curved(0, 3) == (1, 3)
    assert min_orders_curved(5, 3) == (4, 11)
    assert min_orders_curved(0, 1) == (1, 1)


@pytest.mark.parametrize("pname", POLYGON_NAMES)
@pytest.mark.parametrize("p", range(6))
def test_polynomial_exactness_vs_boundary_oracle(pname, p):
    reg = lookup(pname).make()
    f = lookup("p%d" % p)
    exact = greens_poly(reg.vertices, f.meta["monomials"])
    n_xi, n_t = min_orders_polygon(p)
    for policy in (CenterPolicy.VERTEX_AVERAGE, CenterPolicy.ORIGIN):
        got = integrate(reg, policy, f.field, n_xi, n_t)
        assert got == pytest.approx(exact, rel=1e-12)


def test_center_invariance_including_exterior():
    reg = lookup("nonconvex_quad").make()
    f = lookup("p3").field
    vals = [
        integrate(reg, CenterPolicy.custom(x0), f, 6, 6)
        for x0 in [(0.3, 0.3), (0.0, 0.0), (10.0, -3.0), (-2.0, 5.0)]
    ]
    for v in vals[1:]:
        assert v == pytest.approx(vals[0], rel=1e-11)


def test_signed_partitions_still_positive_area():
    reg = lookup("nonconvex_quad").make()
    x0 = np.array([1.5, 1.5])  # outside; some triangle weights negative
    rule = generate_rule(reg, CenterPolicy.custom(tuple(x0)), 2, 2)
    assert rule.weights.min() < 0.0
    assert np.sum(rule.weights) == pytest.approx(
        greens_poly(reg.vertices, {(0, 0): 1.0}), rel=1e-12
    )


def test_affine_bezier_edges_match_segment_fast_path():
    v = [(0.0, 0.0), (2.0, 0.5), (1.0, 2.0)]
    seg_region = polygon(v)
    bez_region = Region(
        [Bezier([v[i], v[(i + 1) % 3]]) for i in range(3)]
    )
    a = generate_rule(seg_region, CenterPolicy.ORIGIN, 3, 3)
    b = generate_rule(bez_region, CenterPolicy.ORIGIN, 3, 3)
    # vertex 0 is the origin, so its two incident edges are dropped from the
    # segment rule but kept (with ~0 weights) in the curve path
    keep = np.abs(b.weights) > 1e-13
    np.testing.assert_allclose(a.points, b.points[keep], atol=1e-13)
    np.testing.assert_allclose(a.weights, b.weights[keep], atol=1e-13)


def test_nonfinite_integrand_reports_point(unit_square):
    with pytest.raises(EvaluationError) as e, np.errstate(divide="ignore", invalid="ignore"):
        integrate(unit_square, CenterPolicy.VERTEX_AVERAGE, lambda x, y: 1.0 / (x - x), 2, 2)
    assert e.value.point is not None


def test_rule_weight_sum_matches_area_for_curved_region():
    reg = lookup("bezier").make()
    rule = generate_rule(reg, CenterPolicy.VERTEX_AVERAGE, 1, 3)
    ref = generate_rule(reg, CenterPolicy.VERTEX_AVERAGE, 64, 64)
    assert np.sum(rule.weights) == pytest.approx(np.sum(ref.weights), rel=1e-12)


def test_hni_equivalence_sample():
    from sbcubature.hni import HomogeneousField, hni_integrate

    reg = lookup("convex_quad").make()
    f = lambda x, y: x**2 * np.asarray(y)
    a = integrate(reg, CenterPolicy.ORIGIN, f, 3, 2)
    b = hni_integrate(reg, HomogeneousField(f, 3), 4)
    assert a == pytest.approx(b, rel=1e-11)
