import math

import pytest

from circbridge import oracle
from circbridge.bessel import (
    SERIES_CUTOFF,
    bessel_i0_series,
    bessel_i0e_asymptotic,
    bessel_i1_series,
    bessel_i1e_asymptotic,
    i0e,
    log_i0,
    log_i0e,
)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_i0_series_at_zero():
    out = bessel_i0_series(0.0)
    assert out.value == 1.0
    assert out.scaled_value == 1.0
    assert out.method_used == "series"


def test_i0_series_matches_integral_representation():
    got = bessel_i0_series(2.0).value
    ref = oracle.bessel_i0_integral(2.0, 1e-13)
    assert rel(got, ref) <= 1e-12
    # independent high-precision value
    assert rel(got, 2.2795853023360673) <= 1e-14


def test_i0_series_matches_compensated_reference():
    # same series, twice the term count, compensated summation
    got = bessel_i0_series(1.0).scaled_value
    ref = oracle.i0e_series_reference(1.0)
    assert rel(got, ref) <= 1e-15


def test_i1_series_at_zero():
    out = bessel_i1_series(0.0)
    assert out.value == 0.0
    assert out.scaled_value == 0.0


def test_i1_series_matches_integral_representation():
    def weighted(t):
        return math.exp(2.0 * math.cos(t)) * math.cos(t)

    ref = oracle.adaptive_quadrature(weighted, 0.0, math.pi, 1e-13).value / math.pi
    got = bessel_i1_series(2.0).value
    assert rel(got, ref) <= 1e-12
    assert rel(got, 1.590636854637329) <= 1e-14


@pytest.mark.parametrize("x", [1e-6, 1e-7, 1e-8])
def test_i1_small_argument_limit(x):
    assert abs(bessel_i1_series(x).value / x - 0.5) <= 1e-10


def test_scaled_value_consistency():
    for x in [0.5, 3.0, 30.0, 250.0, 599.0]:
        out = bessel_i0_series(x)
        assert out.scaled_value == out.value * math.exp(-x)
        assert out.value > 0.0


@pytest.mark.parametrize("kappa", [0.25, 8.0, 123.0])
def test_asym_bracket_order_zero_is_one(kappa):
    assert bessel_i0e_asymptotic(kappa, 0) == 1.0
    assert bessel_i1e_asymptotic(kappa, 0) == 1.0


def test_asym_bracket_order_one_exact():
    assert bessel_i0e_asymptotic(8.0, 1) == 1.015625  # 1 + 1/64
    assert bessel_i1e_asymptotic(8.0, 1) == 0.953125  # 1 - 3/64


def test_asym_brackets_match_scaled_series_at_500():
    scale = math.sqrt(2.0 * math.pi * 500.0)
    ref0 = oracle.i0e_series_reference(500.0) * scale
    ref1 = oracle.i1e_series_reference(500.0) * scale
    assert rel(bessel_i0e_asymptotic(500.0, 3), ref0) <= 1e-10
    assert rel(bessel_i1e_asymptotic(500.0, 3), ref1) <= 1e-10


def test_log_i0_at_zero():
    assert log_i0(0.0) == 0.0


def test_log_i0_matches_series_log():
    assert log_i0(2.0) == math.log(bessel_i0_series(2.0).value)


def test_log_i0_branch_handoff():
    # both branches evaluated at the crossover itself
    k = SERIES_CUTOFF
    series_branch = math.log(bessel_i0_series(k).value)
    asym_branch = (
        k - 0.5 * math.log(2.0 * math.pi * k) + math.log(bessel_i0e_asymptotic(k, 3))
    )
    assert abs(series_branch - asym_branch) <= 1e-12


def test_log_i0e_consistency():
    for k in [0.5, 10.0, 300.0, 599.0]:
        assert abs(log_i0e(k) - (log_i0(k) - k)) <= 1e-10
    assert abs(log_i0e(5000.0) - (log_i0(5000.0) - 5000.0)) <= 1e-9


def test_i0_strictly_increasing():
    grid = [0.5 * i for i in range(61)]  # 0 .. 30
    vals = [bessel_i0_series(x).value for x in grid]
    assert all(b > a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0])
def test_series_vs_integral_representation(kappa):
    got = bessel_i0_series(kappa).value
    ref = oracle.bessel_i0_integral(kappa, 1e-13)
    assert rel(got, ref) <= 1e-12


def test_i0e_helper_branches():
    assert rel(i0e(30.0), oracle.i0e_series_reference(30.0)) <= 1e-13
    # beyond the series cutoff the bracket form takes over
    got = i0e(650.0)
    ref = oracle.i0e_series_reference(650.0)
    assert rel(got, ref) <= 1e-12


def test_domain_and_range_errors():
    with pytest.raises(ValueError):
        bessel_i0_series(-1.0)
    with pytest.raises(ValueError):
        bessel_i1_series(-0.5)
    with pytest.raises(ValueError):
        bessel_i0_series(SERIES_CUTOFF + 1.0)
    with pytest.raises(ValueError):
        bessel_i0e_asymptotic(0.0, 3)
    with pytest.raises(ValueError):
        bessel_i0e_asymptotic(10.0, 4)
    with pytest.raises(ValueError):
        bessel_i1e_asymptotic(10.0, -1)
    with pytest.raises(ValueError):
        log_i0(-2.0)
