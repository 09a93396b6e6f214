import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_genlaguerre

from hermexp import expansion_engine as ee
from hermexp import operator_models as om


def test_group_partial_examples():
    m = om.DiagonalGroup([1.0])
    assert abs(ee.group_partial(m, [1.0], 1.0, 60)[0] - cmath.exp(1j)) < 1e-10
    m2 = om.DiagonalGroup([1.0, 2.0])
    out = ee.group_partial(m2, [1.0, 1.0], 0.5, 80)
    assert np.allclose(out, [cmath.exp(0.5j), cmath.exp(1j)], atol=1e-9)
    # degree zero carries only the subordinated factor
    assert np.allclose(ee.group_partial(m2, [1.0, 1.0], 2.0, 0), om.subordinated_exact(m2, 0.25, [1.0, 1.0]))


def test_cosine_and_sine_partial_examples():
    m = om.DiagonalCosine([2.0])
    assert abs(ee.cosine_partial(m, [1.0], 1.0, 60)[0] - math.cos(2)) < 1e-10
    assert abs(ee.sine_partial(m, [1.0], 1.0, 60)[0] - math.sin(2) / 2) < 1e-10
    assert ee.sine_partial(m, [1.0], 0.0, 0)[0] == 0


def test_partial_sums_consistent_with_coefficients():
    m = om.DiagonalGroup([0.5, 3.0])
    x = np.array([1.0, -2.0j])
    coeffs = [om.coeff_analytic(m, "group", n, x) for n in range(31)]
    direct = ee.partial_from_coefficients(coeffs, "group", 0.9)
    assert np.allclose(direct, ee.group_partial(m, x, 0.9, 30), atol=1e-14)


@settings(max_examples=20, deadline=None)
@given(t=st.floats(-2, 2), seed=st.integers(0, 2**16))
def test_matrix_group_expansion_converges(t, seed):
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    m = om.MatrixGroup(B - B.conj().T)
    x = rng.standard_normal(3) + 0j
    if np.max(np.abs(m.q)) > 8:
        return
    assert np.linalg.norm(ee.group_partial(m, x, t, 200) - om.evolve_group(m, t, x)) < 1e-9 * np.linalg.norm(x)


def test_holo_series():
    m = om.DiagonalGroup([1.0])
    assert np.allclose(ee.holo_series(m, [1.0], 0.3, 60), [math.exp(-0.3)], atol=1e-10)
    c = om.DiagonalCosine([2.0])
    assert np.allclose(ee.holo_series(c, [1.0], 0.35, 60, "cosine"), [math.exp(-1.4)], atol=1e-9)
    x = np.array([1.0, 0.3, -2.0])
    g = om.DiagonalGroup([1.0, 4.0, 7.0])
    assert np.array_equal(ee.holo_series(g, x, 0.25, 40), om.subordinated_exact(g, 0.25, x))
    with pytest.raises(ValueError):
        ee.holo_series(m, [1.0], 0.6, 10)


def test_fejer_expansion_against_direct():
    x = np.ones(1)
    m = om.DiagonalGroup([5.0])
    assert np.linalg.norm(ee.fejer_expansion(m, x, 3.0, 40) - om.fejer_family_direct(m, 3.0, x)) < 1e-6
    assert np.linalg.norm(ee.fejer_expansion(m, x, 0.0, 40)) < 1e-6
    # unit frequency converges slowly; the error still shrinks with N
    m1 = om.DiagonalGroup([1.0])
    errs = [abs(ee.fejer_expansion(m1, x, 3.0, N)[0] - 2.0) for N in (40, 160, 640)]
    assert errs[0] > errs[1] > errs[2]


def test_fejer_expansion_matches_triangle():
    q = np.array([0.5, 2.0, 6.0])
    m = om.DiagonalGroup(q)
    x = np.array([1.0, 2.0, 3.0])
    assert np.allclose(ee.fejer_exact_diagonal(m, x, 4.0), np.maximum(4.0 - q, 0) * x)


def test_fejer_term_decay():
    norms = ee.fejer_term_norms(om.DiagonalGroup([1.0]), np.ones(1), 3.0, 60)
    n = np.arange(1, 61)
    sel = n >= 10
    slope = np.polyfit(np.log(n[sel]), np.log(norms[sel]), 1)[0]
    assert slope <= -4 / 3 + 0.1


def test_laguerre_values_against_scipy():
    for alpha in (0.0, 0.5, 2.0):
        vals = ee.laguerre_values(1.7, 30, alpha)
        assert np.allclose(vals, [eval_genlaguerre(k, alpha, 1.7) for k in range(31)], rtol=1e-12)


def test_laguerre_partial():
    assert np.allclose(ee.laguerre_partial(om.DiagonalGroup([0.0]), [1.0], 3.0, 0, 0.0), [1.0])
    out = ee.laguerre_partial(om.DiagonalGroup([1.0]), [1.0], 1.0, 200, 0.0)
    assert abs(out[0] - cmath.exp(1j)) < 1e-4


def test_laguerre_slower_than_hermite():
    k = np.arange(1, 65, dtype=float)
    m = om.DiagonalGroup(k)
    x = k**-2.6
    exact = om.evolve_group(m, 1.0, x)
    h = np.linalg.norm(exact - ee.group_partial(m, x, 1.0, 128))
    lg = np.linalg.norm(exact - ee.laguerre_partial(m, x, 1.0, 128))
    assert lg > h


def test_error_curves():
    zero = om.DiagonalGroup([0.0, 0.0])
    curve = ee.error_curve(zero, [1.0, 2.0], 1.0, [1, 5, 10])
    assert np.all(np.asarray(curve.errors) == 0)
    k = np.arange(1, 65, dtype=float)
    m = om.DiagonalGroup(k)
    degrees = list(range(16, 257, 16))
    c1 = ee.error_curve(m, k**-3.1, 1.0, degrees)
    assert np.all(np.diff(c1.errors) < 0)
    c2 = ee.error_curve(m, k**-5.1, 1.0, degrees)
    assert ee.rate_fit(c2).slope < ee.rate_fit(c1).slope


def test_rate_fit_synthetic():
    deg = np.array([16, 32, 64, 128, 256, 512])
    exact = ee.ErrorCurve(deg, 7.0 * deg**-2.5, "l2", 1.0, "group")
    fit = ee.rate_fit(exact, drop=0)
    assert fit.slope == pytest.approx(-2.5, abs=1e-12)
    assert fit.residual < 1e-12
    rng = np.random.default_rng(3)
    noisy = ee.ErrorCurve(deg, 7.0 * deg**-2.5 * (1 + 0.05 * rng.uniform(-1, 1, deg.size)), "l2", 1.0, "group")
    assert abs(ee.rate_fit(noisy, drop=0).slope + 2.5) < 0.05
    with pytest.raises(ValueError):
        ee.rate_fit(ee.ErrorCurve(deg[:3], deg[:3] ** -1.0, "l2", 1.0, "group"))


def test_bound_checks():
    k = np.arange(1, 257, dtype=float)
    g = ee.lemma33_check(om.DiagonalGroup(k), k**-4.0, 2, (4, 120), "group")
    assert g.holds
    c = ee.lemma33_check(om.DiagonalCosine(k), k**-6.0, 2, (None, 120), "cosine")
    assert c.holds


def test_sharpness_ratios_bounded():
    r = ee.cosine_sharpness_ratios([10, 20, 40, 80])
    assert np.all(np.isfinite(r)) and np.all(r > 0)
