"""Boundary-only integration of positively homogeneous functions.

For h with h(lambda*x) = lambda^q * h(x) (lambda > 0, q > -2), the region
integral reduces to a pure boundary integral with the scaling center at the
origin:

    int_Omega h dx = 1/(2+q) * sum_i int_0^1 h(c_i(t)) (c_i . c_i'_perp) dt

which needs only t-direction quadrature.  Used as an independent oracle for
the full cubature.
"""

import numpy as np

from . import rules
from .curves import Segment, rotate_minus_90
from .errors import InvalidArgumentError
from .sbc import edge_data


class HomogeneousField:
    """Scalar field asserted positively homogeneous of degree q.

    Homogeneity is spot-checked on random samples at construction; it cannot
    be proven for a black-box callable.
    """

    def __init__(self, h, q, check=True, rng=None):
        if not q > -2.0:
            raise InvalidArgumentError("homogeneity degree must exceed -2")
        self.h = h
        self.q = float(q)
        if check:
            rng = np.random.default_rng(0) if rng is None else rng
            x = rng.uniform(0.2, 1.5, 16)
            y = rng.uniform(0.2, 1.5, 16)
            lam = rng.uniform(0.5, 2.0, 16)
            lhs = np.asarray(self.h(lam * x, lam * y), dtype=float)
            rhs = lam**self.q * np.asarray(self.h(x, y), dtype=float)
            scale = np.abs(rhs).max() + 1e-30
            if np.abs(lhs - rhs).max() > 1e-10 * scale:
                raise InvalidArgumentError(
                    "field is not homogeneous of degree %g on random samples" % q
                )


def hni_integrate(region, hf, n_t):
    """Boundary-only integral of hf over the region (center fixed at origin)."""
    if n_t < 1:
        raise InvalidArgumentError("rule size must be >= 1")
    t_rule = rules.gauss_legendre(n_t)
    total = 0.0
    for c in region.curves:
        C = c.position(t_rule.nodes)
        V = c.velocity(t_rule.nodes)
        perp = np.einsum("ij,ij->i", C, rotate_minus_90(V))
        vals = np.asarray(hf.h(C[:, 0], C[:, 1]), dtype=float)
        total += float(np.dot(t_rule.weights, vals * perp))
    return total / (2.0 + hf.q)


def polygon_hni(region, hf, n_t):
    """Polygon specialization: 1/(2+q) * sum_i ell_i * int_edge h ds."""
    if n_t < 1:
        raise InvalidArgumentError("rule size must be >= 1")
    t_rule = rules.gauss_legendre(n_t)
    origin = np.zeros(2)
    total = 0.0
    for c in region.curves:
        if not isinstance(c, Segment):
            raise InvalidArgumentError("polygon_hni requires segment edges")
        ed = edge_data(c, origin)
        if ed.ell == 0.0:
            continue
        C = c.position(t_rule.nodes)
        vals = np.asarray(hf.h(C[:, 0], C[:, 1]), dtype=float)
        total += ed.ell * ed.delta_tau * float(np.dot(t_rule.weights, vals))
    return total / (2.0 + hf.q)
