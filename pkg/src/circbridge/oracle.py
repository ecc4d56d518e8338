"""Independent brute-force references and error-order scan machinery.

Everything the expansions are validated against lives here: a generic
adaptive Gauss-Kronrod integrator, the integral representation of I0, a
compensated scaled-series reference for the Bessel brackets, quadrature
of the circular distribution function, residual scans over the bulk, and
the log-log slope fit used to measure decay orders.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from . import backend
from . import bessel
from .distributions import SQRT2, VonMisesParams, circular_variance_exact
from .expansions import (
    BulkSpec,
    _log_ratio_core,
    cdf_expansion,
    log_ratio_expansion,
    ratio_expansion,
)

DEFAULT_MAX_DEPTH = 40
# Residuals below this are floating-point noise and are excluded from
# slope fits.
RESIDUAL_FLOOR = 1e-14

SCAN_TARGETS = ("log_ratio", "ratio", "cdf")
_ENVELOPE_POWER = {"log_ratio": 8, "ratio": 12, "cdf": 11}

# 15-point Kronrod rule with embedded 7-point Gauss rule (odd-index and
# center nodes).  Same constants as the compute kernels.
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993945,
    0.5860872354676911,
    0.4058451513773972,
    0.20778495500789848,
    0.0,
)
_WGK = (
    0.022935322010529224,
    0.06309209262997856,
    0.10479001032225019,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
)
_WG = (
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
)


class QuadratureError(ArithmeticError):
    """Raised when adaptive refinement cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class ScanReport:
    """Per-concentration residual maxima and the fitted decay slope."""

    kappa_values: Tuple[float, ...]
    max_residual: Tuple[float, ...]
    max_normalized_residual: Tuple[float, ...]
    fitted_slope: float
    grid_size: int
    regime: BulkSpec


def _gk15_panel(f, a: float, b: float):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    resk = _WGK[7] * fc
    resg = _WG[3] * fc
    for i in range(7):
        dx = h * _XGK[i]
        f1 = f(c - dx)
        f2 = f(c + dx)
        fsum = f1 + f2
        resk += _WGK[i] * fsum
        if i & 1:
            resg += _WG[i >> 1] * fsum
    return resk * h, abs(resk - resg) * h


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> QuadratureResult:
    """Integrate f over [a, b] to absolute tolerance tol.

    Adaptive bisection on 15-point Kronrod panels; each panel is accepted
    when its embedded Gauss/Kronrod error estimate meets the local
    tolerance, which is halved at every split.  Raises QuadratureError if
    a panel at max_depth still fails its tolerance.
    """
    if not (a < b):
        raise ValueError("need a < b, got a=%r b=%r" % (a, b))
    if not (tol > 0.0):
        raise ValueError("tol must be > 0, got %r" % (tol,))
    stack = [(a, b, tol, 0)]
    total = 0.0
    err_total = 0.0
    evals = 0
    while stack:
        a1, b1, tol1, depth = stack.pop()
        val, err = _gk15_panel(f, a1, b1)
        evals += 15
        if err <= tol1:
            total += val
            err_total += err
        elif depth >= max_depth:
            raise QuadratureError(
                "no convergence on [%g, %g] at depth %d (err=%.3e, tol=%.3e)"
                % (a1, b1, depth, err, tol1)
            )
        else:
            mid = 0.5 * (a1 + b1)
            half = 0.5 * tol1
            stack.append((mid, b1, half, depth + 1))
            stack.append((a1, mid, half, depth + 1))
    return QuadratureResult(value=total, abs_error_estimate=err_total, evaluations=evals)


def bessel_i0_integral(kappa: float, tol: float = 1e-13, max_depth: int = DEFAULT_MAX_DEPTH) -> float:
    """I0(kappa) from its integral representation (1/pi) int_0^pi e^(kappa cos t) dt.

    Deliberately independent of the power series.  The integrand is
    evaluated in the scaled form e^(kappa(cos t - 1)) and rescaled at the
    end, which restricts kappa to at most 700 before e^kappa overflows.
    tol is relative.
    """
    if not (0.0 <= kappa <= 700.0):
        raise ValueError("kappa must be in [0, 700], got %r" % (kappa,))
    if not (tol > 0.0):
        raise ValueError("tol must be > 0, got %r" % (tol,))

    def g(t):
        return math.exp(kappa * (math.cos(t) - 1.0))

    coarse = adaptive_quadrature(g, 0.0, math.pi, 1e-4, max_depth)
    abs_tol = 0.5 * tol * coarse.value
    fine = adaptive_quadrature(g, 0.0, math.pi, abs_tol, max_depth)
    return math.exp(kappa) * fine.value / math.pi


def _kahan_series(t0: float, ratio_num: Callable[[int], float]) -> float:
    # Compensated summation, run to twice the term count needed for
    # convergence; serves as the high-trust series reference.
    s = t0
    c = 0.0
    t = t0
    k = 1
    settled = 0
    while True:
        t *= ratio_num(k)
        y = t - c
        tt = s + y
        c = (tt - s) - y
        s = tt
        if settled:
            settled -= 1
            if settled == 0:
                return s
        elif t <= 1e-17 * s:
            settled = k  # keep going for as many terms again
        if k >= 400000:
            raise ArithmeticError("series reference did not converge")
        k += 1


def i0e_series_reference(kappa: float) -> float:
    """Compensated scaled power series for e^(-kappa) I0(kappa), kappa <= 700."""
    if not (0.0 <= kappa <= 700.0):
        raise ValueError("kappa must be in [0, 700], got %r" % (kappa,))
    q = 0.25 * kappa * kappa
    return _kahan_series(math.exp(-kappa), lambda k: q / (k * k))


def i1e_series_reference(kappa: float) -> float:
    """Compensated scaled power series for e^(-kappa) I1(kappa), kappa <= 700."""
    if not (0.0 <= kappa <= 700.0):
        raise ValueError("kappa must be in [0, 700], got %r" % (kappa,))
    if kappa == 0.0:
        return 0.0
    q = 0.25 * kappa * kappa
    return _kahan_series(0.5 * kappa * math.exp(-kappa), lambda k: q / (k * (k + 1)))


def vm_cdf_quadrature(
    params: VonMisesParams,
    x: float,
    tol: float = 1e-12,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Circular distribution function by quadrature on the principal window.

    F(x) = integral of the density from mu - pi to x, for x in
    (mu - pi, mu + pi].  tol is absolute.  For very concentrated laws
    (kappa >= 1e4) the integration is restricted to |t - mu| <= 20 sigma;
    the omitted tail is below e^(-40) of the total mass.
    """
    if not (params.kappa > 0.0):
        raise ValueError("kappa must be > 0, got %r" % (params.kappa,))
    if not (tol > 0.0):
        raise ValueError("tol must be > 0, got %r" % (tol,))
    t_hi = x - params.mu
    if not (-math.pi < t_hi <= math.pi):
        raise ValueError(
            "x must lie in the principal window (mu - pi, mu + pi], got offset %r" % (t_hi,)
        )
    # essentially all mass lies within 20 sigma of the mode; the tail
    # envelope exp(kappa(cos t - 1)) <= exp(-kappa t^2 / 5) puts the
    # remainder below e^-40
    reach = min(math.pi, 20.0 * circular_variance_exact(params.kappa).sigma)
    a = -math.pi
    if params.kappa >= 1e4 and t_hi > -reach:
        a = max(a, -reach)
    # anchor the subdivision at the mode and the mass boundary so the
    # first panel of a wide segment cannot step over the peak
    cuts = [a] + [v for v in (-reach, 0.0, reach) if a < v < t_hi] + [t_hi]
    inv_norm = 1.0 / (2.0 * math.pi * bessel.i0e(params.kappa))
    seg_tol = tol / inv_norm / (len(cuts) - 1)
    mass = 0.0
    try:
        for lo, hi in zip(cuts, cuts[1:]):
            part, _err, _n = backend.vm_scaled_mass(params.kappa, lo, hi, seg_tol, max_depth)
            mass += part
    except ArithmeticError as exc:
        raise QuadratureError(str(exc)) from None
    return inv_norm * mass


def slope_fit(points: Sequence[Tuple[float, float]]) -> float:
    """Least-squares slope of log(y) against log(x).

    Needs at least three points with distinct positive abscissae and
    positive ordinates.
    """
    if len(points) < 3:
        raise ValueError("need at least 3 points, got %d" % len(points))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissae must be distinct")
    if any(x <= 0.0 for x in xs) or any(y <= 0.0 for y in ys):
        raise ValueError("slope fit needs positive coordinates")
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(points)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((v - mx) ** 2 for v in lx)
    sxy = sum((u - mx) * (v - my) for u, v in zip(lx, ly))
    return sxy / sxx


def _scan_residual(target, params, sigma2, sigma, x, quad_tol, max_depth):
    t = x - params.mu
    dt = (t / sigma) / SQRT2
    if target == "log_ratio":
        exact = _log_ratio_core(params.kappa, sigma2, t)
        approx = log_ratio_expansion(dt, params.kappa, 2).value
        return abs(exact - approx)
    if target == "ratio":
        exact = math.exp(_log_ratio_core(params.kappa, sigma2, t))
        approx = ratio_expansion(dt, params.kappa, 2).value
        return abs(exact - approx)
    quad = vm_cdf_quadrature(params, x, quad_tol, max_depth)
    approx = cdf_expansion(dt, params.kappa).value
    return abs(quad - approx)


def residual_scan(
    regime: BulkSpec,
    kappa_values: Sequence[float],
    grid_size: int,
    target: str,
    mu: float = 0.0,
    quad_tol: float = 1e-13,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ScanReport:
    """Exact-versus-expansion residuals over the bulk for each concentration.

    For every kappa the residual of the chosen target is evaluated on an
    odd equispaced delta_tilde grid spanning the bulk; the report records
    the maximum residual, the maximum residual normalized by the envelope
    (1 + |dt|^p)/kappa^3, and the log-log slope across kappa of the
    residual at fixed delta_tilde = 1 (points below RESIDUAL_FLOOR are
    dropped from the fit as floating-point noise).
    """
    if target not in SCAN_TARGETS:
        raise ValueError("target must be one of %s, got %r" % (SCAN_TARGETS, target))
    if len(kappa_values) == 0:
        raise ValueError("kappa_values must not be empty")
    if any(not (k > 0.0) for k in kappa_values):
        raise ValueError("all kappa values must be > 0")
    if grid_size < 11 or grid_size % 2 == 0:
        raise ValueError("grid_size must be odd and >= 11, got %r" % (grid_size,))
    power = _ENVELOPE_POWER[target]
    half = (grid_size - 1) // 2
    max_res: List[float] = []
    max_norm: List[float] = []
    slope_points: List[Tuple[float, float]] = []
    for kappa in kappa_values:
        params = VonMisesParams(mu, kappa)
        cv = circular_variance_exact(kappa)
        sigma2 = cv.value
        sigma = cv.sigma
        hw_dt = regime.delta_halfwidth(kappa) / SQRT2
        step = hw_dt / half
        kappa_cubed = kappa ** 3
        mr = 0.0
        mn = 0.0
        for j in range(-half, half + 1):
            dt = j * step
            x = params.mu + SQRT2 * sigma * dt
            r = _scan_residual(target, params, sigma2, sigma, x, quad_tol, max_depth)
            if r > mr:
                mr = r
            rn = r * kappa_cubed / (1.0 + abs(dt) ** power)
            if rn > mn:
                mn = rn
        max_res.append(mr)
        max_norm.append(mn)
        x1 = params.mu + SQRT2 * sigma
        slope_points.append(
            (kappa, _scan_residual(target, params, sigma2, sigma, x1, quad_tol, max_depth))
        )
    kept = [(k, r) for k, r in slope_points if r >= RESIDUAL_FLOOR]
    if len(kept) < 3:
        raise ValueError("too few residuals above the floating-point floor for a slope fit")
    slope = slope_fit(kept)
    return ScanReport(
        kappa_values=tuple(kappa_values),
        max_residual=tuple(max_res),
        max_normalized_residual=tuple(max_norm),
        fitted_slope=slope,
        grid_size=grid_size,
        regime=regime,
    )
