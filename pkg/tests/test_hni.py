import numpy as np
import pytest

from conftest import greens_monomial
from sbcubature.errors import InvalidArgumentError
from sbcubature.hni import HomogeneousField, hni_integrate, polygon_hni
from sbcubature.region import CenterPolicy, polygon
from sbcubature.sbc import integrate, min_orders_polygon
from sbcubature.testfns import lookup


def const(x, y):
    return np.ones_like(np.asarray(x, dtype=float))


def test_area_of_unit_square(unit_square):
    assert hni_integrate(unit_square, HomogeneousField(const, 0), 2) == pytest.approx(1.0)
    assert polygon_hni(unit_square, HomogeneousField(const, 0), 2) == pytest.approx(1.0)


def test_quadratic_over_centered_square():
    sq = polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    hf = HomogeneousField(lambda x, y: x**2 + np.asarray(y) ** 2, 2)
    assert hni_integrate(sq, hf, 4) == pytest.approx(8.0 / 3.0)


def test_linear_over_unit_square(unit_square):
    hf = HomogeneousField(lambda x, y: x + 0.0 * np.asarray(y), 1)
    assert polygon_hni(unit_square, hf, 4) == pytest.approx(0.5)


def test_polygon_hni_matches_boundary_oracle():
    hexagon = lookup("convex_hexagon").make()
    hf = HomogeneousField(lambda x, y: x**3 * np.asarray(y) ** 2, 5)
    exact = greens_monomial(hexagon.vertices, 3, 2)
    assert polygon_hni(hexagon, hf, 6) == pytest.approx(exact, rel=1e-12)
    assert hni_integrate(hexagon, hf, 6) == pytest.approx(exact, rel=1e-12)


def test_homogeneity_spot_check_rejects_impostor():
    with pytest.raises(InvalidArgumentError):
        HomogeneousField(lambda x, y: x + 1.0, 1)


def test_degree_bound():
    with pytest.raises(InvalidArgumentError):
        HomogeneousField(const, -2.0)


def test_polygon_hni_rejects_curves():
    reg = lookup("bezier").make()
    with pytest.raises(InvalidArgumentError):
        polygon_hni(reg, HomogeneousField(const, 0), 4)


def test_matches_cubature_over_curved_region():
    reg = lookup("bezier").make()
    hf = HomogeneousField(lambda x, y: x**2 * np.asarray(y) ** 3, 5)
    a = hni_integrate(reg, hf, 18)
    b = integrate(reg, CenterPolicy.ORIGIN, hf.h, 4, 11)
    assert a == pytest.approx(b, rel=1e-11)


def test_boundary_only_evaluation_count():
    # a degree-p polynomial split into homogeneous parts needs O(m*p) samples
    reg = lookup("convex_quad").make()
    m = len(reg.curves)
    p = 5
    monomials = lookup("p5").meta["monomials"]
    counter = {"n": 0}
    total = 0.0
    for q in range(p + 1):
        part = {ij: c for ij, c in monomials.items() if sum(ij) == q}
        if not part:
            continue

        def h(x, y, part=part):
            counter["n"] += np.size(x)
            x = np.asarray(x, dtype=float)
            return sum(c * x**i * np.asarray(y) ** j for (i, j), c in part.items())

        n_t = (q + 2) // 2 + 1
        total += hni_integrate(reg, HomogeneousField(h, q, check=False), n_t)
    exact = integrate(reg, CenterPolicy.ORIGIN, lookup("p5").field, *min_orders_polygon(p))
    assert total == pytest.approx(exact, rel=1e-12)
    assert counter["n"] <= m * (p + 1) * ((p + 2) // 2 + 1)
