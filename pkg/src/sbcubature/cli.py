"""Command-line interface: domain files in, values / rules / CSV tables out.

Exit codes: 0 success, 2 invalid input, 3 integrand evaluation failure.
All numbers are printed with 17 significant digits so doubles round-trip.
"""

import argparse
import json
import sys

import numpy as np

from . import exprlang, hni, sbc, singular, testfns, tmvi
from .curves import Bezier, ParametricCurve, RationalBezier, Segment
from .errors import EvaluationError, InvalidArgumentError, NotFoundError
from .region import CenterPolicy, Region


def fmt(v):
    return np.format_float_positional(
        float(v), precision=17, unique=False, fractional=False
    )


def _build_curve(spec):
    kind = spec.get("type")
    known = {
        "segment": {"type", "from", "to"},
        "bezier": {"type", "control_points"},
        "rational_bezier": {"type", "control_points", "weights"},
        "parametric": {"type", "x", "y"},
    }
    if kind not in known:
        raise InvalidArgumentError("unknown curve type %r" % (kind,))
    extra = set(spec) - known[kind]
    if extra:
        raise InvalidArgumentError("unknown curve keys %s" % sorted(extra))
    if kind == "segment":
        return Segment(spec["from"], spec["to"])
    if kind == "bezier":
        return Bezier(spec["control_points"])
    if kind == "rational_bezier":
        return RationalBezier(spec["control_points"], spec["weights"])
    return ParametricCurve(spec["x"], spec["y"])


def load_domain(path):
    """Parse a JSON domain file into (Region, CenterPolicy)."""
    if path.startswith("builtin:"):
        geom = testfns.lookup(path[len("builtin:"):])
        if not isinstance(geom, testfns.NamedGeometry):
            raise InvalidArgumentError("%r is not a geometry" % (path,))
        return geom.make(), CenterPolicy.VERTEX_AVERAGE
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    extra = set(doc) - {"curves", "x0"}
    if extra:
        raise InvalidArgumentError("unknown domain keys %s" % sorted(extra))
    if "curves" not in doc:
        raise InvalidArgumentError("domain file needs a 'curves' list")
    region = Region([_build_curve(c) for c in doc["curves"]])
    policy = CenterPolicy.VERTEX_AVERAGE
    if "x0" in doc:
        x0 = doc["x0"]
        extra = set(x0) - {"strategy", "index", "point"}
        if extra:
            raise InvalidArgumentError("unknown x0 keys %s" % sorted(extra))
        strat = x0.get("strategy")
        if strat == "origin":
            policy = CenterPolicy.ORIGIN
        elif strat == "vertex_average":
            policy = CenterPolicy.VERTEX_AVERAGE
        elif strat == "vertex":
            policy = CenterPolicy.vertex(int(x0["index"]))
        elif strat == "custom":
            policy = CenterPolicy.custom(x0["point"])
        else:
            raise InvalidArgumentError("unknown x0 strategy %r" % (strat,))
    return region, policy


def load_function(spec):
    """Scalar field from 'expr:<source>' or 'builtin:<name>'."""
    if spec.startswith("expr:"):
        return exprlang.compile_field(spec[len("expr:"):]), None
    if spec.startswith("builtin:"):
        fn = testfns.lookup(spec[len("builtin:"):])
        if not isinstance(fn, testfns.NamedFunction):
            raise InvalidArgumentError("%r is not a function" % (spec,))
        return fn.field, fn.meta or {}
    raise InvalidArgumentError("function spec must start with 'expr:' or 'builtin:'")


def _parse_radial(arg):
    if arg == "none":
        return None
    if arg == "jacobi":
        return singular.GAUSS_JACOBI
    if arg.startswith("gsb"):
        alpha = float(arg.split(":", 1)[1]) if ":" in arg else None
        return ("gsb", alpha)
    raise InvalidArgumentError("unknown radial strategy %r" % (arg,))


def _add_center_flag(p):
    p.add_argument(
        "--center",
        default=None,
        help="origin | vertex_average | vertex:<i> | custom:<x>,<y> "
        "(default: domain file / vertex_average)",
    )


def _center_policy(arg, default):
    if arg is None:
        return default
    if arg == "origin":
        return CenterPolicy.ORIGIN
    if arg == "vertex_average":
        return CenterPolicy.VERTEX_AVERAGE
    if arg.startswith("vertex:"):
        return CenterPolicy.vertex(int(arg.split(":", 1)[1]))
    if arg.startswith("custom:"):
        x, y = arg.split(":", 1)[1].split(",")
        return CenterPolicy.custom((float(x), float(y)))
    raise InvalidArgumentError("unknown center %r" % (arg,))


def cmd_integrate(args):
    region, policy = load_domain(args.domain)
    policy = _center_policy(args.center, policy)
    f, meta = load_function(args.function)
    if args.hni is not None:
        hf = hni.HomogeneousField(f, args.hni)
        value = hni.hni_integrate(region, hf, args.n_t)
    elif args.beta is not None:
        beta = args.beta
        xc = np.array(args.xc if args.xc is not None else (0.0, 0.0))

        def g(x, y):
            r2 = (np.asarray(x) - xc[0]) ** 2 + (np.asarray(y) - xc[1]) ** 2
            return f(x, y) * r2 ** (0.5 * beta)

        radial = _parse_radial(args.radial)
        if isinstance(radial, tuple):
            alpha = radial[1] if radial[1] is not None else singular.select_alpha(beta)
            radial = singular.GeneralizedSB(alpha)
        tt = None if args.t_transform == "none" else args.t_transform
        spec = singular.SingularSpec(xc=tuple(xc), radial=radial, t_transform=tt)
        value = singular.integrate_singular(
            region, singular.SplitIntegrand(g, beta), spec, args.n_xi, args.n_t
        )
    else:
        value = sbc.integrate(region, policy, f, args.n_xi, args.n_t)
    print(fmt(value))


def cmd_rule(args):
    region, policy = load_domain(args.domain)
    policy = _center_policy(args.center, policy)
    rule = sbc.generate_rule(region, policy, args.n_xi, args.n_t)
    print("x,y,w")
    for (x, y), w in zip(rule.points, rule.weights):
        print("%s,%s,%s" % (fmt(x), fmt(y), fmt(w)))


def cmd_convergence(args):
    region, policy = load_domain(args.domain)
    policy = _center_policy(args.center, policy)
    f, _ = load_function(args.function)
    surplus = max(64, 2 * args.n_max)

    def run(n_xi, n_t):
        return sbc.integrate(region, policy, f, n_xi, n_t)

    if args.reference == "auto":
        ref = run(args.n_max + 8, args.n_max + 8)
    else:
        ref = float(args.reference)
    print("n,abs_err,rel_err")
    for n in range(args.n_min, args.n_max + 1):
        if args.sweep == "xi":
            val = run(n, surplus)
        elif args.sweep == "t":
            val = run(surplus, n)
        else:
            val = run(n, n)
        err = abs(val - ref)
        rel = err / abs(ref) if ref != 0.0 else err
        print("%d,%s,%s" % (n, fmt(err), fmt(rel)))


def _grid_rows(loop, n):
    lo, hi = loop.bbox()
    xs = lo[0] + (np.arange(n) + 0.5) * (hi[0] - lo[0]) / n
    ys = lo[1] + (np.arange(n) + 0.5) * (hi[1] - lo[1]) / n
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return np.column_stack([X.ravel(), Y.ravel()])


def _interior_mask(loop, pts, n_t):
    C, R, w = loop.samples(n_t)
    diff = C[None, :, :] - pts[:, None, :]
    num = np.einsum("nmi,mi->nm", diff, R)
    dist = np.hypot(diff[..., 0], diff[..., 1])
    W = (num / dist**3) @ w
    return (W > 0.0) & (dist.min(axis=1) > 1e-6 * loop.scale())


def _loop_from(args):
    region, _ = load_domain(args.domain)
    return tmvi.BoundaryLoop(region.curves, check_convex=False)


def cmd_tmvi(args):
    loop = _loop_from(args)
    g, _ = load_function(args.g)
    pts = _grid_rows(loop, args.grid)
    mask = _interior_mask(loop, pts, args.n_t)
    vals = np.full(len(pts), np.nan)
    if np.any(mask):
        vals[mask] = tmvi.tmvi_eval_many(loop, g, pts[mask], args.n_t)
    print("x,y,value")
    for (x, y), v, ok in zip(pts, vals, mask):
        print("%s,%s,%s" % (fmt(x), fmt(y), fmt(v) if ok else ""))


def cmd_distfield(args):
    loop = _loop_from(args)
    pts = _grid_rows(loop, args.grid)
    mask = _interior_mask(loop, pts, args.n_t)
    vals = np.full(len(pts), np.nan)
    if np.any(mask):
        vals[mask] = tmvi.lp_distance_many(loop, pts[mask], args.p, args.n_t)
    print("x,y,value")
    for (x, y), v, ok in zip(pts, vals, mask):
        print("%s,%s,%s" % (fmt(x), fmt(y), fmt(v) if ok else ""))


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sbcubature",
        description="Cubature over planar regions bounded by segments and "
        "parametric curves.  Expressions use variables x, y (fields) or t "
        "(curves); ^ is right-associative and binds tighter than unary minus.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="integrate a scalar field over a domain")
    p.add_argument("domain")
    p.add_argument("function")
    p.add_argument("n_xi", type=int)
    p.add_argument("n_t", type=int)
    _add_center_flag(p)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--xc", type=float, nargs=2, default=None)
    p.add_argument("--radial", default="none", help="none | gsb[:alpha] | jacobi")
    p.add_argument("--t-transform", default="none", choices=["none", "r1", "r2", "r3"])
    p.add_argument("--hni", type=float, default=None, metavar="Q",
                   help="treat the field as homogeneous of degree Q")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("rule", help="print the cubature rule as CSV")
    p.add_argument("domain")
    p.add_argument("n_xi", type=int)
    p.add_argument("n_t", type=int)
    _add_center_flag(p)
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("convergence", help="error sweep against a reference")
    p.add_argument("domain")
    p.add_argument("function")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--reference", default="auto")
    p.add_argument("--sweep", default="both", choices=["both", "xi", "t"])
    _add_center_flag(p)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("tmvi", help="mean value interpolant on an interior grid")
    p.add_argument("domain")
    p.add_argument("g")
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--n-t", type=int, default=256)
    p.set_defaults(func=cmd_tmvi)

    p = sub.add_parser("distfield", help="Lp-distance field on an interior grid")
    p.add_argument("domain")
    p.add_argument("--p", type=float, default=10.0)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--n-t", type=int, default=256)
    p.set_defaults(func=cmd_distfield)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        args.func(args)
    except EvaluationError as exc:
        print("evaluation error: %s" % exc, file=sys.stderr)
        return 3
    except (InvalidArgumentError, NotFoundError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
