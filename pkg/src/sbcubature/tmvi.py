"""Transfinite mean value interpolation and Lp-distance fields on convex loops.

The interpolant of boundary data g at an interior point x is

    u(x) = int g(c(t)) K(x,t) dt / W(x),   K = (c-x).c'_perp / ||c-x||^3,
    W(x) = int K(x,t) dt,

and the Lp-distance field is psi = (1/W_p)^(1/p) with the kernel power
2+p in place of 3.  Both are boundary-only integrals; W > 0 on the interior
of a convex counterclockwise loop.
"""

import warnings

import numpy as np

from . import rules, sbc
from .curves import Curve, rotate_minus_90
from .errors import InvalidArgumentError
from .region import CenterPolicy, Region


class BoundaryLoop(Region):
    """Closed counterclockwise convex chain of curves.

    Convexity is advisory: a warning, not an error, since mildly nonconvex
    loops merely degrade kernel positivity near the boundary.
    """

    def __init__(self, curves, closure_tolerance=1e-12, check_convex=True):
        super().__init__(curves, closure_tolerance=closure_tolerance)
        self._sample_cache = {}
        if check_convex:
            ts = np.linspace(0.0, 1.0, 128)
            pts = np.concatenate([c.position(ts) for c in self.curves])
            centroid = pts.mean(axis=0)
            for c in self.curves:
                C = c.position(ts)
                V = c.velocity(ts)
                perp = np.einsum("ij,ij->i", C - centroid, rotate_minus_90(V))
                if np.any(perp < -1e-10 * self.scale() ** 2):
                    warnings.warn("boundary loop does not look convex", stacklevel=2)
                    break

    def samples(self, n_t):
        """Per-loop cached (points, rotated velocities, weights) at n_t per curve."""
        cached = self._sample_cache.get(n_t)
        if cached is not None:
            return cached
        t_rule = rules.gauss_legendre(n_t)
        C = np.concatenate([c.position(t_rule.nodes) for c in self.curves])
        R = np.concatenate(
            [rotate_minus_90(c.velocity(t_rule.nodes)) for c in self.curves]
        )
        w = np.tile(t_rule.weights, len(self.curves))
        self._sample_cache[n_t] = (C, R, w)
        return C, R, w


class EggCurve(Curve):
    """Closed egg-shaped oval c(t) = (r cos th, a r sin th / (b + r cos th)),
    th = 2 pi t, with exact derivative."""

    def __init__(self, a=4.0, b=5.0, r=1.0):
        if b - abs(r) <= 0:
            raise InvalidArgumentError("need b > |r| for a non-degenerate oval")
        self.a, self.b, self.r = float(a), float(b), float(r)

    def position(self, t):
        th = 2.0 * np.pi * np.asarray(t, dtype=float)
        a, b, r = self.a, self.b, self.r
        out = np.empty(np.shape(th) + (2,))
        out[..., 0] = r * np.cos(th)
        out[..., 1] = a * r * np.sin(th) / (b + r * np.cos(th))
        return out

    def velocity(self, t):
        th = 2.0 * np.pi * np.asarray(t, dtype=float)
        a, b, r = self.a, self.b, self.r
        den = b + r * np.cos(th)
        out = np.empty(np.shape(th) + (2,))
        out[..., 0] = -2.0 * np.pi * r * np.sin(th)
        out[..., 1] = 2.0 * np.pi * a * r * (r + b * np.cos(th)) / den**2
        return out


def egg_domain(a=4.0, b=5.0, r=1.0):
    return BoundaryLoop([EggCurve(a, b, r)])


def _kernel_sums(loop, x, n_t, power):
    """Sum of w * (c-x).c'_perp / ||c-x||^power for a batch of points x (N,2)."""
    C, R, w = loop.samples(n_t)
    diff = C[None, :, :] - x[:, None, :]          # (N, M, 2)
    num = np.einsum("nmi,mi->nm", diff, R)
    dist = np.hypot(diff[..., 0], diff[..., 1])
    return num / dist**power @ w, dist.min(axis=1)


def _check_interior(loop, W, min_dist):
    standoff = 1e-9 * loop.scale()
    if np.any(min_dist <= standoff) or np.any(W <= 0.0):
        raise InvalidArgumentError("evaluation point is outside or on the boundary")


def tmvi_eval_many(loop, g, x, n_t=256):
    """Mean value interpolant of boundary data g at interior points x (N,2)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    C, R, w = loop.samples(n_t)
    gC = np.asarray(g(C[:, 0], C[:, 1]), dtype=float)
    diff = C[None, :, :] - x[:, None, :]
    num = np.einsum("nmi,mi->nm", diff, R)
    dist = np.hypot(diff[..., 0], diff[..., 1])
    K = num / dist**3
    W = K @ w
    _check_interior(loop, W, dist.min(axis=1))
    return (K * gC) @ w / W


def tmvi_eval(loop, g, x, n_t=256):
    return float(tmvi_eval_many(loop, g, np.asarray(x, dtype=float)[None, :], n_t)[0])


def lp_distance_many(loop, x, p, n_t=256):
    """Lp-distance field psi = (1/W_p)^(1/p) at interior points x (N,2)."""
    if p < 1:
        raise InvalidArgumentError("p must be >= 1")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    Wp, min_dist = _kernel_sums(loop, x, n_t, 2.0 + p)
    _check_interior(loop, Wp, min_dist)
    return Wp ** (-1.0 / p)


def lp_distance(loop, x, p, n_t=256):
    return float(lp_distance_many(loop, np.asarray(x, dtype=float)[None, :], p, n_t)[0])


def exact_distance(loop, x):
    """Distance from x to the boundary: Newton on d/dt ||x - c(t)||^2 per curve.

    Sixteen uniform seeds per curve plus the endpoints; the second derivative
    uses a central difference of the velocity, so curves only need first
    derivatives.
    """
    x = np.asarray(x, dtype=float)
    h = 1e-6
    best = np.inf
    for c in loop.curves:
        cand = list(np.linspace(0.0, 1.0, 18))
        seeds = np.linspace(1.0 / 32.0, 1.0 - 1.0 / 32.0, 16)
        for t in seeds:
            for _ in range(50):
                d = x - c.position(t)
                v = c.velocity(t)
                acc = (c.velocity(min(t + h, 1.0)) - c.velocity(max(t - h, 0.0))) / (
                    min(t + h, 1.0) - max(t - h, 0.0)
                )
                F = -2.0 * np.dot(d, v)
                dF = 2.0 * np.dot(v, v) - 2.0 * np.dot(d, acc)
                if dF == 0.0:
                    break
                step = F / dF
                t = min(1.0, max(0.0, t - step))
                if abs(step) < 1e-14:
                    break
            if abs(-2.0 * np.dot(x - c.position(t), c.velocity(t))) < 1e-13 * (
                1.0 + loop.scale() ** 2
            ):
                cand.append(t)
        dists = np.hypot(*(x - c.position(np.array(cand))).T)
        best = min(best, float(dists.min()))
    return best


def relative_l2_error(loop, field_u, field_g, region_orders=(8, 64)):
    """||u - g||_2 / ||u||_2 over the loop interior, via the cubature core.

    Both fields are evaluated at the interior rule points; the scaling
    center is the mean of sampled boundary points (interior for convex
    loops), keeping every rule point strictly inside.
    """
    C, _, _ = loop.samples(64)
    x0 = C.mean(axis=0)
    n_xi, n_t = region_orders
    rule = sbc.generate_rule(loop, CenterPolicy.custom(x0), n_xi, n_t)
    u = np.asarray(field_u(rule.points[:, 0], rule.points[:, 1]), dtype=float)
    g = np.asarray(field_g(rule.points[:, 0], rule.points[:, 1]), dtype=float)
    num = float(np.dot(rule.weights, (u - g) ** 2))
    den = float(np.dot(rule.weights, u * u))
    if den <= 0.0:
        raise InvalidArgumentError("reference field has zero L2 norm")
    return np.sqrt(max(num, 0.0) / den)
