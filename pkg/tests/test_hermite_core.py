import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import hermite_mp, kernel_mp, ortho_mp, rel_close
from hermexp import hermite_core as hc


# --- orthonormal functions --------------------------------------------------


def test_ortho_low_degree_values():
    seq = hc.ortho_hermite_seq(0.0, 1)
    assert seq.values[0] == pytest.approx(math.pi**-0.25, rel=1e-15)
    assert seq.values[1] == 0.0


def test_ortho_against_exact_rational_oracle():
    seq = hc.ortho_hermite_seq(1.3, 50)
    for n in range(51):
        assert rel_close(seq.values[n], ortho_mp(n, "1.3"), 1e-12), n


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 120), t=st.fractions(min_value=-12, max_value=12, max_denominator=64))
def test_ortho_random_points(n, t):
    exact = ortho_mp(n, t)
    got = hc.ortho_hermite(n, float(t))
    assert abs(float(got) - float(exact)) <= 1e-11 * max(abs(float(exact)), 1e-3)


def test_ortho_stays_finite_at_large_degree():
    vals = hc.ortho_hermite_seq(5.0, 4096).values
    assert np.all(np.isfinite(vals))
    assert np.max(np.abs(vals)) < 1.0
    with pytest.raises(ValueError):
        hc.ortho_hermite_seq(0.0, 4097)


# --- polynomials and kernels ------------------------------------------------


def test_hermite_poly_small_cases():
    assert hc.hermite_poly(1, 1.0).to_float() == pytest.approx(2.0, rel=1e-15)
    assert hc.hermite_poly(4, 0.0).to_float() == pytest.approx(12.0, rel=1e-14)
    assert hc.hermite_poly(3, 0.0).sign == 0


def test_hermite_poly_matches_big_integer_oracle():
    h = hc.hermite_poly(25, 0.7)
    assert rel_close(h.to_float(), hermite_mp(25, "0.7"), 1e-11)


def test_hermite_poly_far_beyond_float_range():
    h = hc.hermite_poly(2000, 3.0)
    exact = mp.hermite(2000, 3)
    assert h.sign == int(mp.sign(exact))
    assert h.logmag == pytest.approx(float(mp.log(abs(exact))), rel=1e-12)


def test_kernel_values():
    assert hc.h_fn(0, 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert hc.h_fn(1, 1.0) == pytest.approx(math.exp(-1) / math.sqrt(math.pi), rel=1e-14)
    assert rel_close(hc.h_fn(6, 0.5), kernel_mp(6, "0.5"), 1e-13)


def test_kernel_parity():
    t = np.linspace(0.1, 6, 40)
    for n in (3, 8, 51):
        assert np.array_equal(hc.h_fn(n, -t), (-1) ** n * hc.h_fn(n, t))


def test_kernel_derivative_relation():
    assert hc.h_fn_deriv(0, 1, 0.0) == 0.0
    assert hc.h_fn_deriv(1, 1, 1.0) == pytest.approx(-4 * hc.h_fn(2, 1.0), rel=1e-14)
    step = 1e-5
    fd = (hc.h_fn_deriv(3, 1, 0.4 + step) - hc.h_fn_deriv(3, 1, 0.4 - step)) / (2 * step)
    assert abs(fd - hc.h_fn_deriv(3, 2, 0.4)) < 1e-7


def test_kernel_derivative_against_mpmath():
    # d/dt of e^{−t²}H_n(t)/norm computed by mpmath differentiation
    for n, t in ((2, 0.3), (7, -1.1), (15, 2.0)):
        f = lambda s: mp.exp(-s * s) * mp.hermite(n, s) / (mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi))
        assert rel_close(hc.h_fn_deriv(n, 1, t), mp.diff(f, t), 1e-11)


# --- zeros ------------------------------------------------------------------


def test_zero_small_cases():
    assert np.array_equal(hc.hermite_zeros(1), [0.0])
    assert np.allclose(hc.hermite_zeros(2), [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)


@pytest.mark.parametrize("n", [20, 57, 300, 1001])
def test_zeros_symmetric_and_roots(n):
    z = hc.hermite_zeros(n)
    assert np.max(np.abs(z + z[::-1])) < 1e-13
    assert np.all(np.diff(z) > 0)
    # |H_n(z)| tiny relative to |H_n'(z)| = 2n|H_{n−1}(z)|
    s, lv = hc.hermite_poly_log(n, z)
    _, ld = hc.hermite_poly_log(n - 1, z)
    resid = np.exp(lv - ld - math.log(2 * n)) * np.abs(s)
    assert np.max(resid) < 1e-12 * max(1.0, float(np.max(np.abs(z))))


def test_zeros_against_numpy_hermgauss():
    for n in (5, 40, 150):
        ref, _ = np.polynomial.hermite.hermgauss(n)
        assert np.allclose(hc.hermite_zeros(n), ref, atol=1e-12)


# --- norms ------------------------------------------------------------------


def test_h_norm_l1_values():
    assert hc.h_norm(0, 1) == pytest.approx(1.0, rel=1e-12)
    assert hc.h_norm(10, 1) <= 1 / math.sqrt(2**10 * math.factorial(10))


def test_h_norm_l2_against_trapezoid():
    t = np.linspace(-12, 12, 200001)
    f = np.polynomial.hermite.hermval(t, [0] * 5 + [1]) * np.exp(-t * t) / (2**5 * math.factorial(5) * math.sqrt(math.pi))
    trap = math.sqrt(np.trapezoid(f * f, t))
    assert hc.h_norm(5, 2) == pytest.approx(trap, rel=1e-8)


def test_h_norm_sup_against_dense_grid():
    t = np.linspace(-8, 8, 400001)
    for n in (0, 3, 12):
        f = np.polynomial.hermite.hermval(t, [0] * n + [1]) * np.exp(-t * t) / (2**n * math.factorial(n) * math.sqrt(math.pi))
        assert hc.h_norm(n, math.inf) == pytest.approx(np.max(np.abs(f)), rel=1e-9)


def test_h_norm_l1_against_mpmath():
    for n in (1, 4, 9):
        f = lambda s: abs(mp.exp(-s * s) * mp.hermite(n, s)) / (mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi))
        z = [mp.mpf(r) for r in hc.hermite_zeros(n)]
        exact = mp.quad(f, [-mp.inf, *z, mp.inf])
        assert hc.h_norm(n, 1) == pytest.approx(float(exact), rel=1e-10)


def test_h_norm_rejects_bad_p():
    with pytest.raises(ValueError):
        hc.h_norm(3, 0.5)


# --- uniform bounds -----------------------------------------------------------


def test_muckenhoupt_fit_holds_and_is_quick():
    fit = hc.muckenhoupt_calibrate(10, 40)
    assert fit.holds and fit.consequence_holds
    assert fit.verify_range == (40, 160)
    assert 0 < fit.C < 2
    assert abs(hc.ortho_hermite(5, 5.0)) <= hc.muckenhoupt_bound(5, 5.0, fit.C, fit.gamma)


def test_muckenhoupt_rejects_bad_range():
    with pytest.raises(ValueError):
        hc.muckenhoupt_calibrate(40, 10)
