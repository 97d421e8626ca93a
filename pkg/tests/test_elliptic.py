"""Carlson R_F, period integrals, the involution, and the Landen identity."""

import math
import random

import pytest

from mahler.elliptic import (
    CubicPeriodSpec,
    carlson_rf,
    cubic_roots_pq,
    involution_v,
    landen_check,
    period_integral,
    period_quadrature,
    pq_radicand_coeffs,
)
from mahler.quad import SingularityHint, integrate


def test_rf_symmetric_point():
    assert abs(carlson_rf(4.0, 4.0, 4.0) - 0.5) < 1e-15


def test_rf_lemniscatic():
    assert abs(carlson_rf(0.0, 1.0, 1.0) - 0.5 * math.pi) < 1e-14


def test_rf_against_quadrature():
    # R_F(0,1,2) = (1/2) int_0^inf dt / sqrt(t (t+1) (t+2)); substituting
    # t = u^2 removes the origin singularity exactly
    r = integrate(lambda u: 1.0 / math.sqrt((u * u + 1.0) * (u * u + 2.0)),
                  0.0, math.inf, SingularityHint.none(), 1e-13)
    assert abs(carlson_rf(0.0, 1.0, 2.0) - r.value) < 1e-12


def test_rf_homogeneity():
    rng = random.Random(2718)
    for lam in (0.25, 4.0):
        for _ in range(15):
            x, y, z = (rng.uniform(0.1, 10.0) for _ in range(3))
            lhs = carlson_rf(lam * x, lam * y, lam * z)
            rhs = carlson_rf(x, y, z) / math.sqrt(lam)
            assert abs(lhs - rhs) < 1e-13 * abs(rhs)


def test_rf_rejects_two_zeros():
    with pytest.raises(ValueError):
        carlson_rf(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        carlson_rf(-1.0, 1.0, 1.0)


@pytest.mark.parametrize("k", [1.0, 2.0, 5.0, 10.0])
def test_complete_periods_carlson_vs_quadrature(k):
    coeffs = pq_radicand_coeffs(k)
    r_low, _, r_high = cubic_roots_pq(k)
    lo = -12.0 if k > 3.0 else r_low
    spec = CubicPeriodSpec(coeffs, lo, r_high)
    assert abs(period_integral(spec) - period_quadrature(spec)) < 1e-11
    spec_inf = CubicPeriodSpec(coeffs, -math.inf, min(r_low, -12.0))
    assert abs(period_integral(spec_inf) - period_quadrature(spec_inf)) < 1e-11


def test_degenerate_interval_is_zero():
    spec = CubicPeriodSpec(pq_radicand_coeffs(5.0), -3.0, -3.0)
    assert period_integral(spec) == 0.0


def test_negative_radicand_rejected():
    # +(v+12)(v^2+25v-100) is negative between -12 and the positive root
    c0, c1, c2, c3 = pq_radicand_coeffs(5.0)
    bad = CubicPeriodSpec((-c0, -c1, -c2, -c3), -12.0, cubic_roots_pq(5.0)[2])
    with pytest.raises(ValueError):
        period_integral(bad)


def test_incomplete_piece_matches_plain_quadrature():
    # root endpoint at r_low, ordinary endpoint inside the positive arch;
    # the black-box oracle is sqrt(eps)-limited, hence the loose tolerance
    k = 2.0
    coeffs = pq_radicand_coeffs(k)
    r_low, _, _ = cubic_roots_pq(k)
    cut = k * (1.0 - k)
    spec = CubicPeriodSpec(coeffs, r_low, cut)
    val = period_integral(spec)

    def f(v):
        rad = spec.radicand(v)
        return 1.0 / math.sqrt(rad) if rad > 0 else 0.0

    oracle = integrate(f, r_low, cut, SingularityHint.inverse_sqrt_left(), 1e-12)
    assert abs(val - oracle.value) < 1e-6
    assert abs(val - oracle.value) <= oracle.err_est + 1e-10


def test_involution_is_involutive():
    assert abs(involution_v(involution_v(7.0, 5.0), 5.0) - 7.0) < 1e-11


def test_involution_swaps_quadratic_roots():
    k = 5.0
    r_low, _, r_high = cubic_roots_pq(k)
    assert abs(involution_v(r_low, k) - r_high) < 1e-10
    assert abs(involution_v(r_high, k) - r_low) < 1e-10


def test_involution_pole():
    with pytest.raises(ValueError):
        involution_v(-12.0, 3.0)


def test_involution_fixed_points():
    # fixed points solve v^2 + 24 v + 16 k^2 = 0 (real for k <= 3)
    k = 2.0
    disc = math.sqrt(144.0 - 16.0 * k * k)
    for v in (-12.0 + disc, -12.0 - disc):
        assert abs(involution_v(v, k) - v) < 1e-9


def test_involution_maps_integrand_with_jacobian():
    # change of variables through the involution carries the measure
    # dv / sqrt(C(v)) from one period interval onto the other
    k = 5.0
    coeffs = pq_radicand_coeffs(k)
    spec = CubicPeriodSpec(coeffs, -math.inf, cubic_roots_pq(k)[0])
    r_low = cubic_roots_pq(k)[0]
    for v in (r_low - 1.0, r_low - 5.0, r_low - 20.0):
        w = involution_v(v, k)
        jac = abs((16.0 * k * k - 144.0) / (v + 12.0) ** 2)
        lhs = jac / math.sqrt(spec.radicand(w))
        rhs = 1.0 / math.sqrt(spec.radicand(v))
        assert abs(lhs - rhs) < 1e-10 * rhs


@pytest.mark.parametrize("k", [1.0, 2.0, 10.0])
def test_landen_identity(k):
    res = landen_check(k)
    assert res.diff < 1e-10


def test_landen_near_degenerate():
    assert landen_check(3.0001).diff < 1e-8


def test_landen_rejects_k3():
    with pytest.raises(ValueError):
        landen_check(3.0)
    with pytest.raises(ValueError):
        landen_check(-1.0)
