"""Command-line front end.

Subcommands:
  eval         print one evaluated quantity at a single point
  table        per-grid-point comparison columns over the bulk
  error-scan   residual maxima per concentration plus the fitted slope
  convergence  sup density gap between matched circular laws

Output is CSV (default) or JSON, to stdout or --out.  Identical argument
vectors produce byte-identical output.  The environment variable
CIRC_BRIDGE_MAX_DEPTH overrides the quadrature subdivision depth.

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

import argparse
import json
import math
import os
import sys

from . import oracle
from .distributions import (
    SQRT2,
    VonMisesParams,
    circular_variance_exact,
    matched_sup_gap,
    matched_wn_scale,
    normalize_angle,
    vm_density,
    wrap_angle,
)
from .expansions import (
    BulkSpec,
    cdf_expansion,
    log_ratio_exact,
    log_ratio_expansion,
    ratio_expansion,
    reference_normal_density,
    standardized_deviate,
)

QUANTITIES = (
    "density",
    "logratio-exact",
    "logratio-approx",
    "ratio-approx",
    "cdf-approx",
    "cdf-quad",
)

TABLE_COLUMNS = (
    "x",
    "delta",
    "delta_tilde",
    "vm_density",
    "ref_normal_density",
    "logratio_exact",
    "logratio_order1",
    "logratio_order2",
    "cdf_quad",
    "cdf_approx",
    "residual_log",
    "residual_cdf",
)


class _UsageError(Exception):
    pass


def _fmt(x, precision):
    """Shortest round-trip decimal at the requested precision."""
    if isinstance(x, float):
        if precision >= 17:
            return repr(x)
        return format(x, ".%dg" % precision)
    return str(x)


def _json_value(x, precision):
    if isinstance(x, float):
        return float(_fmt(x, precision))
    return x


def _emit(rows, header, meta, args):
    precision = args.precision
    if args.format == "json":
        payload = {
            "meta": meta,
            "rows": [
                {k: _json_value(v, precision) for k, v in zip(header, row)} for row in rows
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v, precision) for v in row))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _wrapped_mu(mu):
    w = normalize_angle(mu)
    if w != mu:
        print("warning: mu=%r wrapped to %r" % (mu, w), file=sys.stderr)
    return w


def _wrapped_x(x, mu):
    # x is kept on the principal window (mu - pi, mu + pi] around the
    # wrapped mean direction.
    xw = mu + wrap_angle(x - mu)
    if xw != x:
        print("warning: x=%r wrapped to %r (principal window around mu)" % (x, xw), file=sys.stderr)
    return xw


def _max_depth():
    raw = os.environ.get("CIRC_BRIDGE_MAX_DEPTH")
    if raw is None:
        return oracle.DEFAULT_MAX_DEPTH
    try:
        depth = int(raw)
    except ValueError:
        raise _UsageError("CIRC_BRIDGE_MAX_DEPTH must be an integer, got %r" % raw)
    if depth < 1:
        raise _UsageError("CIRC_BRIDGE_MAX_DEPTH must be >= 1, got %d" % depth)
    return depth


def _cmd_eval(args):
    mu = _wrapped_mu(args.mu)
    x = _wrapped_x(args.x, mu)
    params = VonMisesParams(mu, args.kappa)
    depth = _max_depth()
    q = args.quantity
    if q == "density":
        value = vm_density(params, x)
    elif q == "logratio-exact":
        value = log_ratio_exact(params, x)
    elif q == "logratio-approx":
        dt = standardized_deviate(params, x).delta_tilde
        value = log_ratio_expansion(dt, params.kappa, 2).value
    elif q == "ratio-approx":
        dt = standardized_deviate(params, x).delta_tilde
        value = ratio_expansion(dt, params.kappa, 2).value
    elif q == "cdf-approx":
        dt = standardized_deviate(params, x).delta_tilde
        value = cdf_expansion(dt, params.kappa).value
    else:  # cdf-quad
        value = oracle.vm_cdf_quadrature(params, x, args.tol, depth)
    meta = {"command": "eval", "quantity": q, "mu": mu, "kappa": args.kappa, "x": x}
    _emit([(q, mu, args.kappa, x, value)], ("quantity", "mu", "kappa", "x", "value"), meta, args)
    return 0


def _cmd_table(args):
    mu = _wrapped_mu(args.mu)
    params = VonMisesParams(mu, args.kappa)
    if args.grid < 3 or args.grid % 2 == 0:
        raise _UsageError("--grid must be odd and >= 3")
    spec = BulkSpec.fixed(args.eta)
    depth = _max_depth()
    sigma = circular_variance_exact(params.kappa).sigma
    hw_dt = spec.delta_halfwidth(params.kappa) / SQRT2
    half = (args.grid - 1) // 2
    step = hw_dt / half
    rows = []
    for j in range(-half, half + 1):
        dt_grid = j * step
        x = mu + SQRT2 * sigma * dt_grid
        sd = standardized_deviate(params, x)
        lre = log_ratio_exact(params, x)
        lr1 = log_ratio_expansion(sd.delta_tilde, params.kappa, 1).value
        lr2 = log_ratio_expansion(sd.delta_tilde, params.kappa, 2).value
        cq = oracle.vm_cdf_quadrature(params, x, args.tol, depth)
        ca = cdf_expansion(sd.delta_tilde, params.kappa).value
        rows.append(
            (
                x,
                sd.delta,
                sd.delta_tilde,
                vm_density(params, x),
                reference_normal_density(params, x),
                lre,
                lr1,
                lr2,
                cq,
                ca,
                abs(lre - lr2),
                abs(cq - ca),
            )
        )
    meta = {
        "command": "table",
        "mu": mu,
        "kappa": args.kappa,
        "eta": args.eta,
        "grid": args.grid,
    }
    _emit(rows, TABLE_COLUMNS, meta, args)
    return 0


def _geometric_kappas(lo, hi, steps):
    if steps < 2:
        return [lo]
    ratio = math.log(hi) - math.log(lo)
    return [math.exp(math.log(lo) + ratio * i / (steps - 1)) for i in range(steps)]


def _cmd_error_scan(args):
    if not (0 < args.kappa_min <= args.kappa_max):
        raise _UsageError("need 0 < --kappa-min <= --kappa-max")
    if args.regime == "fixed":
        spec = BulkSpec.fixed(args.eta)
    else:
        spec = BulkSpec.shrunken(args.eta)
    kappas = _geometric_kappas(args.kappa_min, args.kappa_max, args.steps)
    report = oracle.residual_scan(
        spec,
        kappas,
        args.grid,
        args.target,
        quad_tol=args.tol,
        max_depth=_max_depth(),
    )
    header = ("record", "kappa", "max_residual", "max_normalized_residual", "fitted_slope")
    rows = [
        ("kappa", k, mr, mn, "")
        for k, mr, mn in zip(report.kappa_values, report.max_residual, report.max_normalized_residual)
    ]
    rows.append(("slope", "", "", "", report.fitted_slope))
    meta = {
        "command": "error-scan",
        "target": args.target,
        "kappa_min": args.kappa_min,
        "kappa_max": args.kappa_max,
        "steps": args.steps,
        "eta": args.eta,
        "regime": args.regime,
        "grid": args.grid,
    }
    _emit(rows, header, meta, args)
    return 0


def _cmd_convergence(args):
    mu = _wrapped_mu(args.mu)
    try:
        kappas = [float(s) for s in args.kappas.split(",") if s.strip()]
    except ValueError:
        raise _UsageError("--kappas must be a comma-separated list of numbers")
    if not kappas or any(k <= 0 for k in kappas):
        raise _UsageError("--kappas must contain positive values")
    rows = []
    for kappa in kappas:
        sup = matched_sup_gap(mu, kappa, args.grid, args.tol)
        rows.append((kappa, matched_wn_scale(kappa), sup))
    meta = {"command": "convergence", "mu": mu, "kappas": args.kappas, "grid": args.grid}
    _emit(rows, ("kappa", "matched_v", "sup_density_gap"), meta, args)
    return 0


def _add_output_options(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument(
        "--precision",
        type=int,
        default=17,
        help="significant digits for emitted numbers (6..17)",
    )
    p.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circbridge",
        description="Circular-to-linear normal bridge: densities, local approximations, error-order scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one quantity at a point")
    p.add_argument("--mu", type=float, required=True, help="mean direction (radians)")
    p.add_argument("--kappa", type=float, required=True, help="concentration")
    p.add_argument("--x", type=float, required=True, help="evaluation point (radians)")
    p.add_argument("--quantity", choices=QUANTITIES, required=True)
    _add_output_options(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("table", help="comparison table over the bulk")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--eta", type=float, default=0.5, help="bulk parameter (fixed regime)")
    p.add_argument("--grid", type=int, default=201, help="odd number of grid points")
    _add_output_options(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("error-scan", help="residual scan across concentrations")
    p.add_argument("--target", choices=oracle.SCAN_TARGETS, required=True)
    p.add_argument("--kappa-min", type=float, required=True)
    p.add_argument("--kappa-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=7)
    p.add_argument("--eta", type=float, default=0.5, help="bulk parameter for the chosen regime")
    p.add_argument("--regime", choices=("fixed", "shrunken"), default="fixed")
    p.add_argument("--grid", type=int, default=201)
    _add_output_options(p)
    p.set_defaults(func=_cmd_error_scan)

    p = sub.add_parser("convergence", help="sup gap between matched circular laws")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--kappas", default="4,16,64,256", help="comma-separated concentrations")
    p.add_argument("--grid", type=int, default=1001, help="theta grid size")
    _add_output_options(p)
    p.set_defaults(func=_cmd_convergence)

    return parser


def run(argv):
    """Dispatch one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 for --help
        return 0 if exc.code == 0 else 1
    try:
        if not (6 <= args.precision <= 17):
            raise _UsageError("--precision must be in [6, 17]")
        return args.func(args)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
