"""Modified Bessel functions of the first kind, orders zero and one.

Two complementary representations: the convergent power series for
moderate argument and the large-argument asymptotic bracket polynomials.
`log_i0` and `log_i0e` splice the two at a crossover chosen so the
branches agree to about 1e-12.
"""

import math
from dataclasses import dataclass

from . import backend

# The raw power series I0(x) stays below double overflow up to x ~ 712;
# the cutoff is set where the order-3 asymptotic bracket becomes accurate
# to ~6e-13 relative, so the two branches hand off cleanly.
SERIES_CUTOFF = 600.0
MAX_ASYM_ORDER = 3

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class BesselEval:
    """A Bessel value together with its overflow-safe scaled form."""

    value: float
    scaled_value: float  # value * exp(-x)
    method_used: str  # "series" or "asymptotic"


def _check_nonneg(x, name="x"):
    if not (x >= 0.0):
        raise ValueError("%s must be >= 0, got %r" % (name, x))


def _check_order(order):
    if order not in (0, 1, 2, 3):
        raise ValueError("asymptotic order must be in {0,1,2,3}, got %r" % (order,))


def bessel_i0_series(x: float) -> BesselEval:
    """I0(x) by its power series.  Requires 0 <= x <= SERIES_CUTOFF."""
    _check_nonneg(x)
    if x > SERIES_CUTOFF:
        raise ValueError("x=%r exceeds the series cutoff %r" % (x, SERIES_CUTOFF))
    s = backend.i0_series_sum(x)
    return BesselEval(value=s, scaled_value=s * math.exp(-x), method_used="series")


def bessel_i1_series(x: float) -> BesselEval:
    """I1(x) by its power series.  Requires 0 <= x <= SERIES_CUTOFF."""
    _check_nonneg(x)
    if x > SERIES_CUTOFF:
        raise ValueError("x=%r exceeds the series cutoff %r" % (x, SERIES_CUTOFF))
    s = backend.i1_series_sum(x)
    return BesselEval(value=s, scaled_value=s * math.exp(-x), method_used="series")


def bessel_i0e_asymptotic(kappa: float, order: int = 3) -> float:
    """Truncated asymptotic bracket of sqrt(2 pi kappa) e^(-kappa) I0(kappa).

    Order counts the 1/kappa correction terms kept beyond the leading one:
    1 + 1/(8k) + 9/(128k^2) + 75/(1024k^3).
    """
    if not (kappa > 0.0):
        raise ValueError("kappa must be > 0, got %r" % (kappa,))
    _check_order(order)
    return backend.i0e_asym_bracket(kappa, order)


def bessel_i1e_asymptotic(kappa: float, order: int = 3) -> float:
    """Truncated asymptotic bracket for I1: 1 - 3/(8k) - 15/(128k^2) - 105/(1024k^3)."""
    if not (kappa > 0.0):
        raise ValueError("kappa must be > 0, got %r" % (kappa,))
    _check_order(order)
    return backend.i1e_asym_bracket(kappa, order)


def i0e(kappa: float) -> float:
    """e^(-kappa) I0(kappa) on either branch; overflow-safe for any kappa >= 0."""
    _check_nonneg(kappa, "kappa")
    if kappa <= SERIES_CUTOFF:
        return backend.i0_series_sum(kappa) * math.exp(-kappa)
    return backend.i0e_asym_bracket(kappa, MAX_ASYM_ORDER) / math.sqrt(
        2.0 * math.pi * kappa
    )


def log_i0e(kappa: float) -> float:
    """log(e^(-kappa) I0(kappa)), the scaled logarithm used by log-space callers."""
    _check_nonneg(kappa, "kappa")
    if kappa <= SERIES_CUTOFF:
        return math.log(backend.i0_series_sum(kappa)) - kappa
    b = backend.i0e_asym_bracket(kappa, MAX_ASYM_ORDER)
    return math.log(b) - (_HALF_LOG_TWO_PI + 0.5 * math.log(kappa))


def log_i0(kappa: float) -> float:
    """log I0(kappa) without overflow for any kappa >= 0."""
    _check_nonneg(kappa, "kappa")
    if kappa <= SERIES_CUTOFF:
        return math.log(backend.i0_series_sum(kappa))
    return kappa + log_i0e(kappa)
