"""s-convexity certification, feasible-s bisection, and the log-window
theta estimate.

The theta oracle below recomputes the grid minimum with plain nested
loops, independently of the scan kernels.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaudit import (
    DomainError,
    Log,
    Power,
    SpectralWindow,
    check_s_convex,
    max_feasible_s,
    theta_log,
)

W14 = SpectralWindow(1.0, 4.0)
WLOG = SpectralWindow(1.0001, 10.0)


def brute_force_worst_violation(f, w, s, nx, nl):
    """Independent oracle: same inequality, naive triple loop."""
    xs = np.linspace(w.m, w.M, nx)
    lams = np.linspace(0.0, 1.0, nl)
    if 0.5 not in lams:
        lams = np.sort(np.append(lams, 0.5))
    worst = -math.inf
    for lam in lams:
        for x in xs:
            for y in xs:
                v = f(lam * x + (1 - lam) * y) - (lam**s * f(x) + (1 - lam) ** s * f(y))
                worst = max(worst, v)
    return worst


class TestCheckSConvex:
    def test_power_07_certified_at_half(self):
        cert = check_s_convex(Power(0.7), W14, 0.5)
        assert cert.certified and cert.max_violation <= 1e-12

    def test_power_one_ordinary_convexity(self):
        cert = check_s_convex(Power(1), SpectralWindow(0.5, 7.0), 1.0)
        assert cert.certified

    def test_log_refuted_at_09(self):
        cert = check_s_convex(Log(10.0), WLOG, 0.9)
        assert cert.status == "refuted"
        assert cert.max_violation > 1e-12
        x, y, lam = cert.witness
        # worst violations pair one endpoint near 1 with the far edge
        assert min(x, y) <= 1.5
        assert 0.2 <= lam <= 0.8
        # the witness really violates the inequality
        f = Log(10.0)
        lhs = f(lam * x + (1 - lam) * y)
        rhs = lam**0.9 * f(x) + (1 - lam) ** 0.9 * f(y)
        assert lhs - rhs == pytest.approx(cert.max_violation, rel=1e-12)

    def test_matches_brute_force(self):
        f = Log(10.0)
        cert = check_s_convex(f, WLOG, 0.9, nx=21, nl=21)
        oracle = brute_force_worst_violation(f, WLOG, 0.9, 21, 21)
        assert cert.max_violation == pytest.approx(oracle, rel=1e-12)

    def test_lambda_grid_contains_exact_half(self):
        cert = check_s_convex(Power(0.5), W14, 0.5, nx=5, nl=4)
        assert cert.lambda_points == 5  # 0.5 appended to the 4-point grid

    def test_s_out_of_range(self):
        with pytest.raises(DomainError):
            check_s_convex(Power(0.5), W14, 0.0)
        with pytest.raises(DomainError):
            check_s_convex(Power(0.5), W14, 1.5)

    def test_grid_too_small(self):
        with pytest.raises(ValueError):
            check_s_convex(Power(0.5), W14, 0.5, nx=2)

    @given(
        s0=st.floats(0.15, 1.0),
        frac=st.floats(0.1, 0.95),
        r=st.floats(0.3, 0.9),
    )
    @settings(max_examples=20, deadline=None)
    def test_monotone_in_s(self, s0, frac, r):
        # if s0 certifies, every smaller s certifies on the same grid
        w = SpectralWindow(0.8, 3.0)
        c0 = check_s_convex(Power(r), w, s0, nx=31, nl=31)
        if c0.certified:
            c1 = check_s_convex(Power(r), w, frac * s0, nx=31, nl=31)
            assert c1.certified

    def test_endpoint_lambdas_never_violate(self):
        # lambda in {0, 1} gives equality; any violation must come from
        # the interior of the lambda grid
        for f in (Power(0.3), Power(2.0), Log(10.0)):
            w = SpectralWindow(1.5, 6.0)
            cert = check_s_convex(f, w, 0.9, nx=15, nl=3)  # lambda grid {0, 1/2, 1}
            if cert.status == "refuted":
                assert cert.witness[2] not in (0.0, 1.0)


class TestMaxFeasibleS:
    def test_power_07_floor_reaches_exponent(self):
        assert max_feasible_s(Power(0.7), W14) >= 0.7 - 1e-4

    def test_power_one_full_range(self):
        assert max_feasible_s(Power(1), SpectralWindow(0.2, 9.0)) == 1.0

    def test_log_analytic_cap(self):
        # single-point cap at (x, y, lam) = (m, 10, 1/2):
        # s <= ln(log10((m+10)/2) / log10(10 m)) / ln(1/2)
        m = 1.0001
        cap = math.log(math.log10((m + 10.0) / 2.0) / math.log10(10.0 * m)) / math.log(0.5)
        val = max_feasible_s(Log(10.0), WLOG)
        assert val <= cap + 1e-3
        assert 0.0 < val < 1.0

    def test_negative_function_rejected(self):
        with pytest.raises(DomainError):
            max_feasible_s(Log(10.0), SpectralWindow(0.5, 2.0))  # log < 0 below 1

    @given(r=st.floats(0.25, 0.95), m=st.floats(0.5, 2.0), rho=st.floats(1.3, 5.0))
    @settings(max_examples=15, deadline=None)
    def test_power_exponent_floor_any_window(self, r, m, rho):
        w = SpectralWindow(m, m * rho)
        assert max_feasible_s(Power(r), w, nx=41, nl=41) >= r - 1e-4


def brute_force_theta(w, eps, nx, nl):
    xs = np.linspace(w.m, w.M, nx)
    best1 = best2 = math.inf
    for i in range(nx):
        for j in range(i + 1, nx):
            x, y = xs[i], xs[j]
            lxy = math.log(x * y)
            for a in np.linspace(eps, 0.5, nl):
                r = math.log(math.log(a * x + (1 - a) * y) / lxy) / math.log(a)
                best1 = min(best1, r)
            for a in np.linspace(0.5, 1 - eps, nl):
                r = math.log(math.log(a * x + (1 - a) * y) / lxy) / math.log(1 - a)
                best2 = min(best2, r)
    return best1, best2


class TestThetaLog:
    def test_positive_on_2_4(self):
        est = theta_log(SpectralWindow(2.0, 4.0), eps=0.01)
        assert est.theta > 0.0
        assert est.theta == min(est.case_one, est.case_two)

    def test_matches_brute_force(self):
        w = SpectralWindow(1.7, 5.0)
        est = theta_log(w, eps=0.02, nx=15, nl=13)
        b1, b2 = brute_force_theta(w, 0.02, 15, 13)
        assert est.case_one == pytest.approx(b1, rel=1e-12)
        assert est.case_two == pytest.approx(b2, rel=1e-12)

    def test_degenerate_width_window(self):
        # x ~ y makes the inner ratio ~ 1/2 everywhere, so the estimate
        # collapses to min over alpha of ln(1/2)/ln(alpha-floor terms)
        w = SpectralWindow(1.5, 1.5 + 1e-6)
        est = theta_log(w, eps=1e-3, nx=21, nl=21)
        expected = math.log(0.5) / math.log(1e-3)
        assert est.theta == pytest.approx(expected, rel=1e-3)
        b1, b2 = brute_force_theta(w, 1e-3, 21, 21)
        assert est.theta == pytest.approx(min(b1, b2), rel=1e-12)

    def test_eps_zero_rejected(self):
        with pytest.raises(DomainError):
            theta_log(SpectralWindow(2.0, 4.0), eps=0.0)

    def test_window_below_one_rejected(self):
        with pytest.raises(DomainError):
            theta_log(SpectralWindow(0.9, 4.0))
        with pytest.raises(DomainError):
            theta_log(SpectralWindow(1.0, 4.0))  # needs m >= 1 + 1e-9

    def test_nonincreasing_in_eps(self):
        w = SpectralWindow(1.3, 6.0)
        prior = math.inf
        for eps in (0.25, 0.1, 0.02, 1e-3):
            est = theta_log(w, eps=eps, nx=41, nl=41)
            assert est.theta <= prior + 1e-15
            prior = est.theta
