import numpy as np
import pytest


def greens_monomial(vertices, i, j):
    """Boundary-integral oracle for the monomial x^i y^j over a polygon.

    Uses the divergence form int x^i y^j dA = oint x^(i+1)/(i+1) y^j dy with
    a high-order Gauss rule per edge; independent of the library under test.
    """
    x, w = np.polynomial.legendre.leggauss(12)
    s = 0.5 * (x + 1.0)
    ws = 0.5 * w
    v = np.asarray(vertices, dtype=float)
    total = 0.0
    for k in range(len(v)):
        a, b = v[k], v[(k + 1) % len(v)]
        xs = a[0] + s * (b[0] - a[0])
        ys = a[1] + s * (b[1] - a[1])
        total += (b[1] - a[1]) * np.sum(ws * xs ** (i + 1) * ys**j) / (i + 1)
    return total


def greens_poly(vertices, monomials):
    return sum(c * greens_monomial(vertices, i, j) for (i, j), c in monomials.items())


@pytest.fixture
def unit_square():
    from sbcubature.region import polygon

    return polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
