"""Closed planar regions bounded by an ordered counterclockwise chain of curves."""

import warnings
from dataclasses import dataclass

import numpy as np

from .curves import Curve, Segment, perp_product
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class CenterPolicy:
    """Scaling-center selection: 'origin', 'vertex_average', 'vertex', 'custom'."""

    strategy: str
    index: int = 0
    point: tuple = (0.0, 0.0)

    ORIGIN = None  # populated below
    VERTEX_AVERAGE = None

    @staticmethod
    def vertex(i):
        return CenterPolicy("vertex", index=i)

    @staticmethod
    def custom(p):
        return CenterPolicy("custom", point=(float(p[0]), float(p[1])))


CenterPolicy.ORIGIN = CenterPolicy("origin")
CenterPolicy.VERTEX_AVERAGE = CenterPolicy("vertex_average")


@dataclass(frozen=True)
class CurvedTriangle:
    """One boundary curve plus the shared apex x0."""

    curve: Curve
    x0: np.ndarray


class Region:
    """Counterclockwise chain of curves; end of each curve meets the next start.

    Chain closure is validated to ``closure_tolerance`` (absolute, per
    coordinate); gaps are a hard error.  Orientation is not checked at
    construction (signed area needs an integration rule), but downstream
    results are signed, so a clockwise chain yields negative area.
    """

    def __init__(self, curves, closure_tolerance=1e-12):
        curves = list(curves)
        if not curves:
            raise InvalidArgumentError("region needs at least one curve")
        self.curves = curves
        self.closure_tolerance = closure_tolerance
        starts = np.array([c.start() for c in curves])
        ends = np.array([c.end() for c in curves])
        gap = np.abs(ends - np.roll(starts, -1, axis=0)).max()
        if gap > closure_tolerance:
            raise InvalidArgumentError(
                "boundary chain is not closed: max endpoint gap %.3e exceeds %.3e"
                % (gap, closure_tolerance)
            )
        for c in curves:
            if isinstance(c, Segment) and np.hypot(*(c.b - c.a)) == 0.0:
                raise InvalidArgumentError("zero-length segment in boundary chain")
        self._starts = starts

    @property
    def vertices(self):
        """Curve start points, in chain order."""
        return self._starts.copy()

    def bbox(self):
        ts = np.linspace(0.0, 1.0, 64)
        pts = np.concatenate([c.position(ts) for c in self.curves])
        return pts.min(axis=0), pts.max(axis=0)

    def scale(self):
        """Bounding-box diagonal, used for relative tolerances."""
        lo, hi = self.bbox()
        return float(np.hypot(*(hi - lo)))


def polygon(vertices, **kw):
    """Region whose boundary is the closed polyline through the given vertices."""
    v = np.asarray(vertices, dtype=float)
    segs = [Segment(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]
    return Region(segs, **kw)


def resolve_center(region, policy):
    if policy.strategy == "origin":
        return np.zeros(2)
    if policy.strategy == "vertex_average":
        return region.vertices.mean(axis=0)
    if policy.strategy == "vertex":
        i = policy.index
        if not 0 <= i < len(region.curves):
            raise InvalidArgumentError(
                "vertex index %d out of range for %d curves" % (i, len(region.curves))
            )
        return region.vertices[i]
    if policy.strategy == "custom":
        return np.asarray(policy.point, dtype=float)
    raise InvalidArgumentError("unknown center strategy %r" % (policy.strategy,))


def decompose(region, x0):
    """One curved triangle per boundary curve, all sharing the apex x0."""
    x0 = np.asarray(x0, dtype=float)
    return [CurvedTriangle(curve=c, x0=x0) for c in region.curves]


def is_star_convex(region, x0, samples_per_curve=256):
    """Sampled sufficient check that every boundary point sees x0 from inside.

    Advisory only: the cubature stays correct for non-star-convex choices of
    x0, the partition just acquires signed (partially cancelling) pieces.
    """
    if samples_per_curve < 2:
        raise InvalidArgumentError("need at least 2 samples per curve")
    x0 = np.asarray(x0, dtype=float)
    tol = 1e-12 * region.scale() ** 2
    ts = np.linspace(0.0, 1.0, samples_per_curve)
    for c in region.curves:
        if np.any(perp_product(c, ts, x0) < -tol):
            return False
    return True


def warn_if_not_star_convex(region, x0):
    if not is_star_convex(region, x0):
        warnings.warn(
            "scaling center is not star-visible from the whole boundary; "
            "weights will be signed",
            stacklevel=3,
        )
