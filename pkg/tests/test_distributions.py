import math

import pytest

from circbridge import backend, oracle
from circbridge.distributions import (
    SQRT2,
    CircularVariance,
    VonMisesParams,
    WrappedNormalParams,
    _wn_wrap_count,
    circular_variance_exact,
    circular_variance_expansion,
    matched_sup_gap,
    matched_wn_scale,
    normal_cdf,
    normal_pdf,
    normalize_angle,
    upper_incomplete_moment,
    vm_density,
    vm_log_density,
    wn_circular_variance,
    wn_density,
    wrap_angle,
)

TWO_PI = 2.0 * math.pi


def rel(a, b):
    return abs(a - b) / abs(b)


def sigma2_reference(kappa):
    """Circular variance from the compensated scaled-series Bessel reference."""
    return 1.0 - oracle.i1e_series_reference(kappa) / oracle.i0e_series_reference(kappa)


# ---------------------------------------------------------------- parameters


def test_params_normalize_mu():
    p = VonMisesParams(7.0, 1.0)
    assert p.mu == normalize_angle(7.0)
    assert 0.0 <= p.mu < TWO_PI
    with pytest.raises(ValueError):
        VonMisesParams(0.0, -0.1)
    with pytest.raises(ValueError):
        WrappedNormalParams(0.0, 0.0)


def test_wrap_angle_range():
    for t in [-9.0, -math.pi, -1.0, 0.0, 1.0, math.pi, 9.0, 100.0]:
        w = wrap_angle(t)
        assert -math.pi < w <= math.pi
        assert abs(math.sin(w) - math.sin(t)) < 1e-12


# ------------------------------------------------------------- vm density


def test_vm_density_uniform_limit():
    p = VonMisesParams(0.0, 0.0)
    for theta in [0.0, 1.0, 2.0, 5.0]:
        assert vm_density(p, theta) == 1.0 / TWO_PI


def test_vm_density_at_mode_kappa_two():
    p = VonMisesParams(0.0, 2.0)
    got = vm_density(p, 0.0)
    ref = math.exp(2.0) / (TWO_PI * oracle.i0e_series_reference(2.0) * math.exp(2.0))
    assert rel(got, ref) <= 1e-13
    assert rel(got, 0.5158854120190136) <= 1e-14


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0])
def test_vm_density_symmetric_about_mu(t):
    p = VonMisesParams(1.0, 5.0)
    assert rel(vm_density(p, 1.0 + t), vm_density(p, 1.0 - t)) <= 1e-13


@pytest.mark.parametrize("kappa", [0.0, 0.5, 5.0, 50.0, 500.0])
def test_vm_density_normalizes(kappa):
    p = VonMisesParams(0.8, kappa)
    r = oracle.adaptive_quadrature(
        lambda th: vm_density(p, th), p.mu - math.pi, p.mu + math.pi, 1e-11
    )
    assert abs(r.value - 1.0) <= 1e-10


def test_vm_density_maximized_at_mu():
    p = VonMisesParams(2.5, 7.0)
    peak = vm_density(p, p.mu)
    for j in range(721):
        theta = j * TWO_PI / 721.0
        assert vm_density(p, theta) <= peak


def test_vm_log_density_uniform():
    p = VonMisesParams(0.0, 0.0)
    assert vm_log_density(p, math.pi) == -math.log(TWO_PI)


def test_vm_log_density_large_kappa_finite():
    p = VonMisesParams(0.0, 1000.0)
    v = vm_log_density(p, 0.0)
    assert math.isfinite(v)
    assert abs(v - 2.5348140437211897) <= 1e-9


def test_vm_log_density_consistent_with_density():
    p = VonMisesParams(0.3, 3.0)
    for j in range(13):
        theta = j * TWO_PI / 13.0
        assert rel(math.exp(vm_log_density(p, theta)), vm_density(p, theta)) <= 1e-13


# ------------------------------------------------------- circular variance


def test_circular_variance_exact_kappa_ten():
    cv = circular_variance_exact(10.0)
    assert isinstance(cv, CircularVariance)
    assert 0.0 < cv.value < 1.0
    assert cv.sigma == math.sqrt(cv.value)
    assert rel(cv.value, sigma2_reference(10.0)) <= 1e-12
    assert rel(cv.value, 0.05140017404515404) <= 1e-12


def test_circular_variance_decreasing_in_kappa():
    grid = [float(2 ** i) for i in range(11)]  # 1 .. 1024
    vals = [circular_variance_exact(k).value for k in grid]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_circular_variance_vs_expansion_gap():
    exact = circular_variance_exact(10.0).value
    assert abs(exact - (1.0 / 20.0 + 1.0 / 800.0 + 1.0 / 8000.0)) <= 5e-4


def test_circular_variance_expansion_values():
    assert circular_variance_expansion(2.0) == 0.296875
    got = circular_variance_expansion(1000.0)
    want = 1.0 / 2000.0 + 1.0 / 8e6 + 1.0 / 8e9
    assert math.isclose(got, want, rel_tol=1e-15)


def test_circular_variance_domain():
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            circular_variance_exact(bad)
        with pytest.raises(ValueError):
            circular_variance_expansion(bad)


# -------------------------------------------------------- wrapped normal


@pytest.mark.parametrize("v", [0.1, 1.0, 3.0])
def test_wn_density_normalizes(v):
    p = WrappedNormalParams(1.234, v)
    r = oracle.adaptive_quadrature(lambda th: wn_density(p, th, 1e-12), 0.0, TWO_PI, 1e-10)
    assert abs(r.value - 1.0) <= 1e-9


def test_wn_density_narrow_peak_single_wrap():
    p = WrappedNormalParams(math.pi, 0.1)
    got = wn_density(p, math.pi, 1e-12)
    assert abs(got - 1.0 / (0.1 * math.sqrt(TWO_PI))) <= 1e-12


def test_wn_density_symmetric():
    p = WrappedNormalParams(2.0, 0.7)
    for t in [0.2, 1.0, 2.5]:
        assert rel(wn_density(p, 2.0 + t), wn_density(p, 2.0 - t)) <= 1e-13


@pytest.mark.parametrize("v", [0.3, 1.0, 2.5])
def test_wn_density_truncation_bound(v):
    # doubling the wrap count beyond the chosen bound moves nothing
    tol = 1e-12
    t = wrap_angle(1.0)
    k = _wn_wrap_count(t, v, tol)
    assert abs(backend.wn_density_at(t, v, k) - backend.wn_density_at(t, v, 2 * k)) < tol


def test_wn_density_rejects_bad_tol():
    p = WrappedNormalParams(0.0, 1.0)
    with pytest.raises(ValueError):
        wn_density(p, 0.0, 0.0)


def test_wn_circular_variance_values():
    v = math.sqrt(2.0 * math.log(2.0))
    assert math.isclose(wn_circular_variance(v), 0.5, rel_tol=0.0, abs_tol=1e-15)
    assert math.isclose(wn_circular_variance(1.0), 0.3934693402873666, rel_tol=1e-14)
    # small-scale Taylor window
    r = wn_circular_variance(0.01)
    assert abs(r - 0.5e-4) <= 0.01 ** 4 / 8.0
    with pytest.raises(ValueError):
        wn_circular_variance(-1.0)


# ---------------------------------------------------------- matched scale


def test_matched_scale_identity():
    for kappa in [1.0, 10.0, 100.0]:
        sigma = circular_variance_exact(kappa).sigma
        assert matched_wn_scale(kappa) == SQRT2 * sigma


def test_matched_scale_vs_reference():
    got = matched_wn_scale(100.0)
    ref = math.sqrt(2.0 * sigma2_reference(100.0))
    assert rel(got, ref) <= 1e-12


def test_matched_scale_large_kappa():
    assert abs(matched_wn_scale(1e4) - 0.01) <= 2e-5


def test_matched_sup_gap_decreasing():
    gaps = [matched_sup_gap(0.0, k, grid_size=301) for k in [4.0, 16.0, 64.0, 256.0]]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


# ------------------------------------------------------------ linear normal


def test_normal_pdf_values():
    assert normal_pdf(0.0) == 1.0 / math.sqrt(TWO_PI)
    for z in [0.5, 1.0, 3.0]:
        assert normal_pdf(z) == normal_pdf(-z)
    r = oracle.adaptive_quadrature(normal_pdf, -10.0, 10.0, 1e-11)
    assert abs(r.value - 1.0) <= 1e-10


def test_normal_cdf_values():
    assert normal_cdf(0.0) == 0.5
    for z in [0.3, 1.7, 4.0]:
        assert abs(normal_cdf(-z) - (1.0 - normal_cdf(z))) <= 1e-14
    ref = oracle.adaptive_quadrature(normal_pdf, -10.0, 1.96, 1e-12).value
    assert abs(normal_cdf(1.96) - ref) <= 1e-11
    assert abs(normal_cdf(1.96) - 0.9750021048517795) <= 1e-14


def test_upper_incomplete_moment_at_zero():
    assert upper_incomplete_moment(0, 0.0) == 0.5
    assert upper_incomplete_moment(2, 0.0) == 0.5
    assert upper_incomplete_moment(4, 0.0) == 1.5
    assert upper_incomplete_moment(6, 0.0) == 7.5
    assert upper_incomplete_moment(8, 0.0) == 52.5


def test_upper_incomplete_moment_vs_quadrature():
    ref = oracle.adaptive_quadrature(lambda y: y ** 6 * normal_pdf(y), 1.0, 12.0, 1e-12).value
    assert abs(upper_incomplete_moment(6, 1.0) - ref) <= 1e-10
    assert abs(upper_incomplete_moment(6, 1.0) - 7.4612140238738665) <= 1e-13


@pytest.mark.parametrize("j", [0, 2, 4, 6, 8])
@pytest.mark.parametrize("z", [-2.0, 0.0, 1.0, 3.0])
def test_upper_incomplete_moment_closed_forms(j, z):
    def integrand(y):
        return y ** j * normal_pdf(y)

    ref = oracle.adaptive_quadrature(integrand, z, z + 42.0, 1e-12).value
    assert abs(upper_incomplete_moment(j, z) - ref) <= 1e-10


def test_upper_incomplete_moment_rejects_odd_j():
    for j in (1, 3, 5, 7, 9, -2):
        with pytest.raises(ValueError):
            upper_incomplete_moment(j, 0.0)
