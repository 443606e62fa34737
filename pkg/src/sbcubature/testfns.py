"""Built-in test functions and geometries, addressable by name.

Functions are numpy-vectorized scalar fields f(x, y).  Metadata records
what the acceptance and property tests need: polynomial degree (with the
monomial expansion), homogeneity degree, or singularity location/strength.
"""

from dataclasses import dataclass, field

import numpy as np

from .curves import Bezier, ParametricCurve, RationalBezier, Segment
from .errors import NotFoundError
from .region import Region, polygon
from .tmvi import egg_domain


@dataclass(frozen=True)
class NamedFunction:
    name: str
    field: object
    meta: dict = None


@dataclass(frozen=True)
class NamedGeometry:
    name: str
    make: object  # zero-argument constructor


def _poly_field(monomials):
    def f(x, y):
        x = np.asarray(x, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape)
        for (i, j), c in monomials.items():
            total += c * x**i * np.asarray(y) ** j
        return total

    return f


_POLY_MONOMIALS = {
    "p0": {(0, 0): 1.0},
    "p1": {(1, 0): 1.0, (0, 1): -2.0, (0, 0): 1.0},
    "p2": {(2, 0): 3.0, (1, 1): 4.0, (0, 2): -2.0, (1, 0): -1.0, (0, 1): 2.0, (0, 0): -3.0},
    "p3": {
        (3, 0): 4.0, (2, 1): -2.0, (1, 2): -3.0, (0, 3): 1.0,
        (2, 0): 8.0, (1, 1): -4.0, (0, 2): 5.0,
        (1, 0): -6.0, (0, 1): -4.0, (0, 0): 7.0,
    },
    "p4": {
        (4, 0): -3.0, (3, 1): -5.0, (2, 2): 2.0, (1, 3): -9.0, (0, 4): 1.0,
        (3, 0): 3.0, (2, 1): -2.0, (1, 2): -1.0, (0, 3): 5.0,
        (2, 0): 4.0, (1, 1): -7.0, (0, 2): -6.0,
        (1, 0): -4.0, (0, 1): 6.0, (0, 0): -8.0,
    },
    "p5": {
        (5, 0): 10.0, (4, 1): -5.0, (3, 2): -7.0, (2, 3): 6.0, (1, 4): 3.0, (0, 5): 1.0,
        (4, 0): -1.0, (3, 1): 2.0, (2, 2): 11.0, (1, 3): -8.0, (0, 4): -2.0,
        (3, 0): -3.0, (2, 1): 9.0, (1, 2): 8.0, (0, 3): -10.0,
        (2, 0): -9.0, (1, 1): -6.0, (0, 2): 7.0,
        (1, 0): 5.0, (0, 1): -4.0, (0, 0): 4.0,
    },
}


def _franke1(x, y):
    return (
        0.75 * np.exp(-((9 * x - 2) ** 2 + (9 * y - 2) ** 2) / 4.0)
        + 0.75 * np.exp(-((9 * x + 1) ** 2) / 49.0 - (9 * y + 1) / 10.0)
        + 0.5 * np.exp(-((9 * x - 7) ** 2 + (9 * y - 3) ** 2) / 4.0)
        + 0.2 * np.exp(-((9 * x - 4) ** 2) - (9 * y - 7) ** 2)
    )


def _franke2(x, y):
    return (np.tanh(9.0 * y - 9.0 * x) + 1.0) / 9.0


def _franke3(x, y):
    return (1.25 + np.cos(5.4 * y)) / (6.0 * (1.0 + (3.0 * x - 1.0) ** 2))


def _bump_numerator(x, y):
    return (
        np.exp(-(((x - 0.25) / 0.4) ** 2 + ((y - 0.2) / 0.7) ** 2) ** 2)
        * np.cos(5.0 * x) ** 2
        * np.cos(5.0 * y) ** 2
    )


def _cubic_numerator(x, y):
    return (
        4 - 2 * x + y - x**2 + 2 * x * y - 3 * y**2
        + 3 * x**3 - 5 * x**2 * y + 5 * x * y**2 - 4 * y**3
    )


def _fs5_numerator_over_r2(x, y):
    # full integrand is (...)/r^3; dividing the degree-2-homogeneous
    # numerator by r^2 leaves a bounded degree-0 factor over r^1
    r = np.sqrt(x * x + y * y)
    num = 2 * x**2 + 2 * y * (y + r) + x * (y + 2 * r)
    return num / (x * x + y * y)


def _r_power(x, y, power):
    return (np.asarray(x) ** 2 + np.asarray(y) ** 2) ** power


_FUNCTIONS = {}
_GEOMETRIES = {}


def _register_fn(name, f, **meta):
    _FUNCTIONS[name] = NamedFunction(name=name, field=f, meta=meta)


def _register_geom(name, make):
    _GEOMETRIES[name] = NamedGeometry(name=name, make=make)


for _name, _mon in _POLY_MONOMIALS.items():
    _register_fn(_name, _poly_field(_mon), degree=int(_name[1:]), monomials=_mon)

_register_fn("fF1", _franke1)
_register_fn("fF2", _franke2)
_register_fn("fF3", _franke3)

_register_fn("fC1", _poly_field({(0, 0): 1.0}), degree=0, monomials={(0, 0): 1.0})
_register_fn("fC2", _poly_field(_POLY_MONOMIALS["p5"]), degree=5,
             monomials=_POLY_MONOMIALS["p5"])
_register_fn("fC3", _franke1)
_register_fn(
    "fC4",
    lambda x, y: np.exp(-(((x - 0.4) / 0.3) ** 2 + ((y - 0.5) / 0.4) ** 2) ** 2)
    * np.cos(3.0 * x) ** 2
    * np.cos(8.0 * y) ** 2,
)

_register_fn(
    "fS1",
    lambda x, y: _cubic_numerator(x, y) / _r_power(x, y, 0.25),
    singular_xc=(0.0, 0.0), beta=0.5, numerator=_cubic_numerator,
)
_register_fn(
    "fS2",
    lambda x, y: _bump_numerator(x, y) / _r_power(x, y, 0.25),
    singular_xc=(0.0, 0.0), beta=0.5, numerator=_bump_numerator,
)
_register_fn(
    "fS3",
    lambda x, y: _cubic_numerator(x, y) / _r_power(x, y, 0.9),
    singular_xc=(0.0, 0.0), beta=1.8, numerator=_cubic_numerator,
)
_register_fn(
    "fS4",
    lambda x, y: _bump_numerator(x, y) / _r_power(x, y, 0.9),
    singular_xc=(0.0, 0.0), beta=1.8, numerator=_bump_numerator,
)
_register_fn(
    "fS5",
    lambda x, y: _fs5_numerator_over_r2(x, y) / _r_power(x, y, 0.5),
    singular_xc=(0.0, 0.0), beta=1.0, numerator=_fs5_numerator_over_r2,
    homogeneous=-1.0,
)
_register_fn(
    "fS6",
    lambda x, y: _bump_numerator(x, y) / _r_power(x, y, 0.5),
    singular_xc=(0.0, 0.0), beta=1.0, numerator=_bump_numerator,
)

_register_fn("g1", lambda x, y: 1.0 - 2.0 * x + 3.0 * y, degree=1)
_register_fn("g2", lambda x, y: np.sin(x) * np.sin(y))


# ---------------------------------------------------------------------------
# geometries

_CONVEX_QUAD = [(0.0, 0.0), (3.0, 0.0), (4.0, 2.0), (1.0, 3.0)]
# six points on an ellipse: convex by construction
_CONVEX_HEX = [
    (2.0 * np.cos(th), 1.5 * np.sin(th))
    for th in np.pi / 18.0 + np.linspace(0.0, 2.0 * np.pi, 6, endpoint=False)
]
_NONCONVEX_QUAD = [(0.0, 0.0), (2.0, 0.0), (0.5, 0.5), (0.0, 2.0)]


def _star_vertices():
    angles = np.linspace(0.0, 2.0 * np.pi, 10, endpoint=False)
    radii = np.where(np.arange(10) % 2 == 0, 1.0, 0.5)
    return np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])


_SQRT3 = np.sqrt(3.0)

_TRIANGLES = {
    "T1": [(0.0, 0.0), (103 / 400, -99 * _SQRT3 / 400), (-97 / 400, 101 * _SQRT3 / 400)],
    "T2": [(0.0, 0.0), (13 / 40, -9 * _SQRT3 / 40), (-7 / 40, 11 * _SQRT3 / 40)],
    "T3": [(0.0, 0.0), (1.0, 0.0), (0.5, _SQRT3 / 2)],
}


def _bezier_region():
    cps = [
        [(0, 3 / 26), (7 / 26, 9 / 26), (15 / 26, 0), (10 / 13, 3 / 26)],
        [(10 / 13, 3 / 26), (23 / 26, 9 / 26), (15 / 26, 17 / 26), (10 / 13, 23 / 26)],
        [(10 / 13, 23 / 26), (1 / 2, 25 / 26), (5 / 26, 1), (0, 23 / 26)],
        [(0, 23 / 26), (7 / 26, 17 / 26), (5 / 26, 9 / 26), (0, 3 / 26)],
    ]
    return Region([Bezier(cp) for cp in cps])


def _deltoid_region():
    # the natural trigonometric parametrization runs clockwise, so each arc
    # is traversed with parameter i - t (i = 3, 2, 1) to orient the chain
    # counterclockwise
    curves = []
    for i in (3, 2, 1):
        arg = "(%d-t)" % i
        x = "(1+2*cos(2*pi/3*%s))^2/12" % arg
        y = "(1+2*sin(2*pi/3*%s)-4*sin(4*pi/3*%s))/6" % (arg, arg)
        curves.append(ParametricCurve(x, y))
    return Region(curves, closure_tolerance=1e-9)


def _circle_region():
    # unit circle from four rational quadratic arcs (exact conic representation)
    w = np.array([1.0, np.sqrt(0.5), 1.0])
    quarters = [
        [(1, 0), (1, 1), (0, 1)],
        [(0, 1), (-1, 1), (-1, 0)],
        [(-1, 0), (-1, -1), (0, -1)],
        [(0, -1), (1, -1), (1, 0)],
    ]
    return Region([RationalBezier(cp, w) for cp in quarters])


def _curved_triangle_t4():
    bez = Bezier([(1.0, 0.0), (7 / 6, _SQRT3 / 6), (1 / 3, _SQRT3 / 3), (0.5, _SQRT3 / 2)])
    return Region(
        [Segment((0.0, 0.0), (1.0, 0.0)), bez, Segment((0.5, _SQRT3 / 2), (0.0, 0.0))]
    )


_register_geom("convex_quad", lambda: polygon(_CONVEX_QUAD))
_register_geom("convex_hexagon", lambda: polygon(_CONVEX_HEX))
_register_geom("nonconvex_quad", lambda: polygon(_NONCONVEX_QUAD))
_register_geom("nonconvex_star", lambda: polygon(_star_vertices()))
for _tname, _verts in _TRIANGLES.items():
    _register_geom(_tname, lambda v=_verts: polygon(v))
_register_geom("T4", _curved_triangle_t4)
_register_geom("bezier", _bezier_region)
_register_geom("deltoid", _deltoid_region)
_register_geom("circle", _circle_region)
_register_geom("egg", egg_domain)

POLYGON_NAMES = ("convex_quad", "convex_hexagon", "nonconvex_quad", "nonconvex_star")


def lookup(name):
    """Registered function or geometry; raises NotFoundError with the catalog."""
    if name in _FUNCTIONS:
        return _FUNCTIONS[name]
    if name in _GEOMETRIES:
        return _GEOMETRIES[name]
    raise NotFoundError(
        "unknown name %r; functions: %s; geometries: %s"
        % (name, ", ".join(sorted(_FUNCTIONS)), ", ".join(sorted(_GEOMETRIES)))
    )


def function_names():
    return sorted(_FUNCTIONS)


def geometry_names():
    return sorted(_GEOMETRIES)


def rescaled_polygon(name):
    """Polygon translated/scaled into the largest subset of the unit square."""
    geom = lookup(name)
    reg = geom.make()
    v = reg.vertices
    lo = v.min(axis=0)
    span = (v.max(axis=0) - lo).max()
    return polygon((v - lo) / span)


# ---------------------------------------------------------------------------
# crack-tip enriched bilinear element integrands

_XFEM_NODES = {
    "Omega1": np.array([(-1.1, -0.1), (0.0, 0.0), (0.0, 1.0), (-0.9, 0.9)]),
    "Omega2": np.array([(0.0, 0.0), (0.9, 0.1), (1.1, 0.9), (0.0, 1.0)]),
}

_XI_SIGNS = np.array([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])


class BilinearElement:
    """Four-node quadrilateral with the standard bilinear isoparametric map."""

    def __init__(self, nodes):
        self.nodes = np.asarray(nodes, dtype=float)

    def shape(self, xi, eta):
        return 0.25 * (1.0 + np.multiply.outer(xi, _XI_SIGNS[:, 0])) * (
            1.0 + np.multiply.outer(eta, _XI_SIGNS[:, 1])
        )

    def shape_grad_ref(self, xi, eta):
        """dN/d(xi,eta): shape (..., 4, 2)."""
        xi = np.asarray(xi, dtype=float)
        out = np.empty(xi.shape + (4, 2))
        out[..., :, 0] = 0.25 * _XI_SIGNS[:, 0] * (
            1.0 + np.multiply.outer(eta, _XI_SIGNS[:, 1])
        )
        out[..., :, 1] = 0.25 * _XI_SIGNS[:, 1] * (
            1.0 + np.multiply.outer(xi, _XI_SIGNS[:, 0])
        )
        return out

    def to_physical(self, xi, eta):
        return self.shape(xi, eta) @ self.nodes

    def to_reference(self, x, y):
        """Inverse of the bilinear map by Newton iteration (vectorized)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        xi = np.zeros(np.broadcast(x, y).shape)
        eta = np.zeros_like(xi)
        target = np.stack([np.broadcast_to(x, xi.shape), np.broadcast_to(y, xi.shape)], -1)
        for _ in range(30):
            res = self.to_physical(xi, eta) - target
            J = np.einsum("...ki,kj->...ij", self.shape_grad_ref(xi, eta), self.nodes)
            det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
            dxi = (J[..., 1, 1] * res[..., 0] - J[..., 1, 0] * res[..., 1]) / det
            deta = (-J[..., 0, 1] * res[..., 0] + J[..., 0, 0] * res[..., 1]) / det
            xi -= dxi
            eta -= deta
            if max(np.abs(dxi).max(), np.abs(deta).max()) < 1e-14:
                break
        return xi, eta

    def shape_grad_physical(self, x, y):
        """N_I and physical gradients dN_I/dx, dN_I/dy at given points."""
        xi, eta = self.to_reference(x, y)
        N = self.shape(xi, eta)
        dref = self.shape_grad_ref(xi, eta)
        J = np.einsum("...ki,kj->...ij", dref, self.nodes)  # d(x)/d(xi)
        det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
        inv = np.empty_like(J)
        inv[..., 0, 0] = J[..., 1, 1] / det
        inv[..., 0, 1] = -J[..., 0, 1] / det
        inv[..., 1, 0] = -J[..., 1, 0] / det
        inv[..., 1, 1] = J[..., 0, 0] / det
        # dN/dx_j = dN/dxi_i * dxi_i/dx_j; dxi/dx is inv(J) with our J = dx/dxi
        grad = np.einsum("...ki,...ij->...kj", dref, inv)
        return N, grad


def xfem_split_regions(element, dx):
    """Element subregions with the discontinuity ray from (dx, 0.5) inserted."""
    if element == "Omega2":
        v = [(0.0, 0.0), (0.9, 0.1), (1.1, 0.9), (0.0, 1.0), (0.0, 0.5)]
        return [polygon(v)]
    if element == "Omega1":
        upper = [(0.0, 0.5), (0.0, 1.0), (-0.9, 0.9), (-0.98, 0.5)]
        lower = [(-1.1, -0.1), (0.0, 0.0), (0.0, 0.5), (-0.98, 0.5)]
        return [polygon(upper), polygon(lower)]
    raise NotFoundError("unknown element %r" % (element,))


def xfem_integrands(element, dx):
    """Sixteen enriched stiffness integrands for the crack-tip element test.

    Each integrand is the scalar product of the gradient of F*N_I with the
    gradient of N_J, where F = sqrt(r)*sin(theta/2) in polar coordinates
    about the crack tip (dx, 0.5).  Returned as smooth numerators g with
    the 1/sqrt(r) factor split off, i.e. the full integrand is
    g(x, y) / ||x - xc||^(1/2), plus the split geometry and xc.
    """
    if element not in _XFEM_NODES:
        raise NotFoundError("unknown element %r" % (element,))
    xc = np.array([float(dx), 0.5])
    elem = BilinearElement(_XFEM_NODES[element])

    def numerator(i, j):
        def g(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            N, grad = elem.shape_grad_physical(x, y)
            rx = x - xc[0]
            ry = y - xc[1]
            r = np.hypot(rx, ry)
            th = np.arctan2(ry, rx)
            s = np.sin(0.5 * th)
            c = np.cos(0.5 * th)
            # sqrt(r)*dF/dx = -s/2, sqrt(r)*dF/dy = c/2, sqrt(r)*F = r*s
            return N[..., i] * (-0.5 * s * grad[..., j, 0] + 0.5 * c * grad[..., j, 1]) + (
                r * s
            ) * (
                grad[..., i, 0] * grad[..., j, 0] + grad[..., i, 1] * grad[..., j, 1]
            )

        return g

    fields = [numerator(i, j) for i in range(4) for j in range(4)]
    return xfem_split_regions(element, dx), fields, 0.5, xc
