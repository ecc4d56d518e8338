"""Local approximations bridging the circular and linear normal laws.

For large concentration the circular normal density, rescaled by the
matched linear width sqrt(2) sigma, approaches the standard normal
density evaluated at the standardized deviate.  This module provides the
standardized deviates, the bulk region where the approximation is
uniform, the exact log-ratio of the two densities, its polynomial
expansions through second order in 1/kappa, the corresponding corrected
distribution function, and the normalization-constant expansion.

All residual claims are of order (1 + |dt|^p) / kappa^3 with an envelope
power p specific to each expansion (8 for the log form, 12 for the ratio
form, 11 for the distribution function).
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import bessel
from .distributions import (
    SQRT2,
    VonMisesParams,
    circular_variance_exact,
    normal_cdf,
    normal_pdf,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_HALF_LOG_TWO = 0.5 * math.log(2.0)


@dataclass(frozen=True)
class StandardizedDeviate:
    """Deviate delta = (x - mu)/sigma and its rescaled form delta/sqrt(2)."""

    delta: float
    delta_tilde: float


@dataclass(frozen=True)
class BulkSpec:
    """Region of deviates where the expansions hold uniformly.

    Fixed regime: |delta| <= eta * sqrt(kappa) with 0 < eta < 1.
    Shrunken regime: |delta| <= eta_tilde * kappa^(1/4), any eta_tilde > 0;
    this is the fixed regime with eta replaced by eta_tilde * kappa^(-1/4).
    """

    regime: str
    eta: Optional[float] = None
    eta_tilde: Optional[float] = None

    def __post_init__(self):
        if self.regime == "fixed":
            if self.eta is None or not (0.0 < self.eta < 1.0):
                raise ValueError("fixed regime needs 0 < eta < 1, got %r" % (self.eta,))
        elif self.regime == "shrunken":
            if self.eta_tilde is None or not (self.eta_tilde > 0.0):
                raise ValueError(
                    "shrunken regime needs eta_tilde > 0, got %r" % (self.eta_tilde,)
                )
        else:
            raise ValueError("regime must be 'fixed' or 'shrunken', got %r" % (self.regime,))

    @classmethod
    def fixed(cls, eta: float) -> "BulkSpec":
        return cls(regime="fixed", eta=eta)

    @classmethod
    def shrunken(cls, eta_tilde: float) -> "BulkSpec":
        return cls(regime="shrunken", eta_tilde=eta_tilde)

    def delta_halfwidth(self, kappa: float) -> float:
        """Half-width of the bulk in delta units at the given concentration."""
        if self.regime == "fixed":
            return self.eta * math.sqrt(kappa)
        return self.eta_tilde * kappa ** 0.25


@dataclass(frozen=True)
class ExpansionValue:
    """An expansion value plus the scale of its truncation remainder."""

    value: float
    order: int
    remainder_scale: float


def _require_positive_kappa(kappa):
    if not (kappa > 0.0):
        raise ValueError("kappa must be > 0, got %r" % (kappa,))


def standardized_deviate(params: VonMisesParams, x: float) -> StandardizedDeviate:
    """Deviate of a point x on the line near mu, in units of sigma."""
    _require_positive_kappa(params.kappa)
    sigma = circular_variance_exact(params.kappa).sigma
    delta = (x - params.mu) / sigma
    return StandardizedDeviate(delta=delta, delta_tilde=delta / SQRT2)


def in_bulk(params: VonMisesParams, spec: BulkSpec, x: float) -> bool:
    """Whether x lies in the bulk region of the concentrated circular law."""
    d = standardized_deviate(params, x).delta
    return abs(d) <= spec.delta_halfwidth(params.kappa)


def _log_ratio_core(kappa: float, sigma2: float, t: float) -> float:
    # Log of sqrt(2) sigma f(x) / phi(delta_tilde), assembled in log space
    # with the large kappa terms paired off analytically:
    #   kappa cos t - log I0 = -2 kappa sin^2(t/2) - log(e^-kappa I0).
    s = math.sin(0.5 * t)
    delta = t / math.sqrt(sigma2)
    return (
        -2.0 * kappa * (s * s)
        - _HALF_LOG_TWO_PI
        - bessel.log_i0e(kappa)
        + _HALF_LOG_TWO
        + 0.5 * math.log(sigma2)
        + 0.25 * (delta * delta)
    )


def log_ratio_exact(params: VonMisesParams, x: float) -> float:
    """Exact log of the density ratio sqrt(2) sigma f(x) / phi(delta_tilde).

    Evaluated entirely in log space; finite well beyond kappa = 5000.
    """
    _require_positive_kappa(params.kappa)
    s2 = circular_variance_exact(params.kappa).value
    return _log_ratio_core(params.kappa, s2, x - params.mu)


def log_ratio_expansion(delta_tilde: float, kappa: float, order: int) -> ExpansionValue:
    """Polynomial expansion of the log density ratio in powers of 1/kappa.

    Order 1 keeps (dt^4/24 - dt^2/8)/kappa; order 2 adds
    (-dt^6/720 + dt^4/48 - dt^2/8 + 3/64)/kappa^2.  The remainder is of
    order (1 + |dt|^8)/kappa^3.
    """
    _require_positive_kappa(kappa)
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2, got %r" % (order,))
    u = 1.0 / kappa
    d2 = delta_tilde * delta_tilde
    d4 = d2 * d2
    v = (d4 / 24.0 - d2 / 8.0) * u
    if order == 2:
        d6 = d4 * d2
        v += (-d6 / 720.0 + d4 / 48.0 - d2 / 8.0 + 3.0 / 64.0) * (u * u)
    scale = (1.0 + d4 * d4) * (u * u * u)
    return ExpansionValue(value=v, order=order, remainder_scale=scale)


def ratio_expansion(delta_tilde: float, kappa: float, order: int) -> ExpansionValue:
    """Expansion of the density ratio itself (not its log).

    Order 2 carries the extra cross terms from exponentiating the log
    form; the remainder envelope power rises to 12.
    """
    _require_positive_kappa(kappa)
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2, got %r" % (order,))
    u = 1.0 / kappa
    d2 = delta_tilde * delta_tilde
    d4 = d2 * d2
    v = 1.0 + (d4 / 24.0 - d2 / 8.0) * u
    if order == 2:
        d6 = d4 * d2
        d8 = d4 * d4
        v += (d8 / 1152.0 - 19.0 * d6 / 2880.0 + 11.0 * d4 / 384.0 - d2 / 8.0 + 3.0 / 64.0) * (
            u * u
        )
    scale = (1.0 + d4 * d4 * d4) * (u * u * u)
    return ExpansionValue(value=v, order=order, remainder_scale=scale)


def cdf_expansion(delta_tilde: float, kappa: float) -> ExpansionValue:
    """Corrected normal approximation of the circular distribution function.

    Phi(dt) minus phi(dt) times the two-term odd correction polynomial
    {dt^3/(24 kappa) + (dt^7/1152 - dt^5/1920 + 5 dt^3/192 - 3 dt/64)/kappa^2}.
    Negative deviates are evaluated by reflection, which makes
    value(dt) + value(-dt) = 1 hold exactly in floating point.  No
    clamping to [0, 1] is applied.
    """
    _require_positive_kappa(kappa)
    u = 1.0 / kappa
    a = abs(delta_tilde)
    scale = (1.0 + a ** 11) * (u * u * u)
    if delta_tilde < 0.0:
        v = 1.0 - _cdf_expansion_nonneg(-delta_tilde, u)
    else:
        v = _cdf_expansion_nonneg(delta_tilde, u)
    return ExpansionValue(value=v, order=2, remainder_scale=scale)


def _cdf_expansion_nonneg(dt: float, u: float) -> float:
    d2 = dt * dt
    d3 = d2 * dt
    d5 = d3 * d2
    d7 = d5 * d2
    correction = (d3 / 24.0) * u + (d7 / 1152.0 - d5 / 1920.0 + 5.0 * d3 / 192.0 - 3.0 * dt / 64.0) * (
        u * u
    )
    return normal_cdf(dt) - normal_pdf(dt) * correction


def reference_normal_density(params: VonMisesParams, x: float) -> float:
    """Density of the matched linear law Normal(mu, 2 sigma^2) at x."""
    _require_positive_kappa(params.kappa)
    sigma = circular_variance_exact(params.kappa).sigma
    dt = (x - params.mu) / sigma / SQRT2
    return normal_pdf(dt) / (SQRT2 * sigma)


def normalization_log_constant(kappa: float, mode: str = "exact", centered: bool = False) -> float:
    """Log normalization constant -log(2 pi)/2 - log I0 + log(2)/2 + log(sigma^2)/2.

    Exact mode computes the left side from the Bessel series; expansion
    mode returns -kappa + 3/(64 kappa^2) + 13/(128 kappa^3).  With
    centered=True the leading -kappa is dropped, which keeps the two
    modes comparable to full precision at large kappa (the full values
    round to ulp(kappa) once stored).
    """
    _require_positive_kappa(kappa)
    if mode == "exact":
        s2 = circular_variance_exact(kappa).value
        brk = math.sqrt(2.0 * math.pi * kappa) * bessel.i0e(kappa)
        c = 0.5 * math.log(2.0 * kappa * s2) - math.log(brk)
    elif mode == "expansion":
        u = 1.0 / kappa
        c = (3.0 / 64.0) * (u * u) + (13.0 / 128.0) * (u * u * u)
    else:
        raise ValueError("mode must be 'exact' or 'expansion', got %r" % (mode,))
    if centered:
        return c
    return c - kappa
