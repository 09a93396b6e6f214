"""Named invariant checks run by the ``verify-all`` experiment.

Each check returns a ``CheckResult``; the pass rule and its tolerance come
from the experiment config, never from this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import expansion_engine as ee
from . import hermite_core as hc
from . import operator_models as om
from . import quadrature as qd
from . import scalar_expansions as se
from .signedlog import log_factorial, log_hermite_norm


@dataclass(frozen=True)
class CheckResult:
    value: float
    reference: float
    rule: str  # "abs", "rel", "upper" or "ratio"
    params: dict = field(default_factory=dict)


def _rel_residual(terms: list[np.ndarray]) -> float:
    resid = np.abs(sum(terms))
    scale = np.maximum.reduce([np.abs(x) for x in terms])
    ok = scale > 0
    return float(np.max(resid[ok] / scale[ok])) if np.any(ok) else 0.0


def _h_scaled_table(t: np.ndarray, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Sign and log|h_k(t)| + ½log(2^k k! √π) for k = 0..N.

    Shifting every degree by its own normalization keeps values in range;
    identities are checked after restoring the relative factors in log form.
    """
    sign, log_m = hc.scaled_ortho_log_table(t, N)
    return sign, log_m - t * t


def _terms(sign, logs, n, pairs) -> list[np.ndarray]:
    """c·h_k(t)·√(2^n n! √π) for each (k, log c, sign c) in ``pairs``."""
    ref = 0.5 * log_hermite_norm(n)
    return [
        s_c * sign[k] * np.exp(logs[k] + log_c + ref - 0.5 * log_hermite_norm(k)) for k, log_c, s_c in pairs
    ]


def kernel_recurrence(p: dict, rng) -> CheckResult:
    """max relative residual of 2(n+1)h_{n+1} − 2t h_n + h_{n−1}, pointwise on t ∈ [−10, 10]."""
    N = int(p.get("n_max", 300))
    t = np.linspace(-10, 10, int(p.get("points", 201)))
    sign, logs = _h_scaled_table(t, N + 2)
    worst = 0.0
    for n in range(1, N + 1):
        a, b, c = _terms(sign, logs, n, [(n + 1, math.log(2 * (n + 1)), 1.0), (n, 0.0, 1.0), (n - 1, 0.0, 1.0)])
        worst = max(worst, _rel_residual([a, -2 * t * b, c]))
    return CheckResult(worst, 0.0, "abs", {"n_max": N})


def kernel_ode(p: dict, rng) -> CheckResult:
    """max relative residual of h_n'' + 2t h_n' + 2(n+1)h_n with derivatives from the shift relation."""
    N = int(p.get("n_max", 300))
    t = np.linspace(-10, 10, int(p.get("points", 201)))
    worst = 0.0
    for n in range(0, N + 1, int(p.get("stride", 1))):
        ref = 0.5 * log_hermite_norm(n)
        # derivatives rescaled by the same factor √(2^n n! √π) in log form
        pieces = []
        for k in (2, 1, 0):
            s_k, l_k = hc.h_fn_log(n + k, t)
            l_k = l_k + k * math.log(2.0) + log_factorial(n + k) - log_factorial(n) + ref
            pieces.append((-1) ** k * s_k * np.exp(l_k))
        d2, d1, h0 = pieces
        worst = max(worst, _rel_residual([d2, 2 * t * d1, 2 * (n + 1) * h0]))
    return CheckResult(worst, 0.0, "abs", {"n_max": N})


def derivative_fd(p: dict, rng) -> CheckResult:
    """h_fn_deriv(n, 1) against a central difference of h_fn."""
    step = float(p.get("step", 1e-5))
    t = np.linspace(-4, 4, 33)
    worst = 0.0
    for n in range(0, int(p.get("n_max", 20)) + 1):
        fd = (hc.h_fn(n, t + step) - hc.h_fn(n, t - step)) / (2 * step)
        worst = max(worst, float(np.max(np.abs(fd - hc.h_fn_deriv(n, 1, t)))))
    return CheckResult(worst, 0.0, "abs", {"step": step})


def parity(p: dict, rng) -> CheckResult:
    t = np.linspace(0.05, 10, 200)
    worst = 0.0
    for n in range(0, int(p.get("n_max", 100)) + 1):
        worst = max(worst, float(np.max(np.abs(hc.h_fn(n, -t) - (-1) ** n * hc.h_fn(n, t)))))
    return CheckResult(worst, 0.0, "abs")


def norm_bound_p1(p: dict, rng) -> CheckResult:
    """max over n of ‖h_n‖_1 √(2^n n!), which must not exceed 1."""
    N = int(p.get("n_max", 200))
    worst = max(
        math.exp(hc.h_norm_log(n, 1.0) + 0.5 * (n * math.log(2.0) + log_factorial(n))) for n in range(N + 1)
    )
    return CheckResult(worst, 1.0, "upper", {"n_max": N})


def extremum_identity(p: dict, rng) -> CheckResult:
    """((n+1)/n)·max_{zeros of H_n}|h_{n+1}| against ‖h_{n−1}‖_∞/(2n)."""
    worst = 0.0
    for n in range(1, int(p.get("n_max", 60)) + 1):
        _, lm = hc.h_fn_log(n + 1, hc.hermite_zeros(n))
        lhs = math.log((n + 1) / n) + float(np.max(lm))
        rhs = hc.h_norm_log(n - 1, math.inf) - math.log(2 * n)
        worst = max(worst, abs(math.expm1(lhs - rhs)))
    return CheckResult(worst, 0.0, "abs")


def rule_moments(p: dict, rng) -> CheckResult:
    """Gauss-Hermite sums of t^{2j} against Γ(j + 1/2)."""
    size = int(p.get("size", 64))
    rule = qd.gauss_hermite_rule(size)
    worst = 0.0
    for j in range(0, size):
        exact = math.exp(math.lgamma(j + 0.5))
        approx = float(np.sum(np.exp(np.log(rule.weights) + 2 * j * np.log(np.abs(rule.nodes) + 1e-300))))
        worst = max(worst, abs(approx - exact) / exact)
    return CheckResult(worst, 0.0, "abs", {"size": size})


def discrete_orthonormality(p: dict, rng) -> CheckResult:
    N = int(p.get("n_max", 60))
    rule = qd.gauss_hermite_rule(int(p.get("size", 65)))
    x = rule.nodes
    H = np.array([hc.ortho_hermite(n, x) for n in range(N + 1)])
    G = (np.exp(rule.log_scaled_weights) * H) @ H.T
    return CheckResult(float(np.max(np.abs(G - np.eye(N + 1)))), 0.0, "abs")


def scalar_series(p: dict, rng) -> CheckResult:
    worst = max(
        abs(se.exp_partial(1, 1, 60) - math.e),
        abs(se.cos_partial(1, math.pi, 60) + 1),
        abs(se.exp_partial(2j, 0.5, 80) - complex(math.cos(1), math.sin(1))),
        abs(se.cos_partial(2.5, 1.7, 80) - math.cos(math.sqrt(2.5) * 1.7)),
    )
    return CheckResult(float(worst), 0.0, "abs")


def eta_l2(p: dict, rng) -> CheckResult:
    m = int(p.get("m", 40))
    return CheckResult(se.eta_partial_error(1.0, m, 2.0), 0.0, "abs", {"m": m})


def _test_models(rng) -> dict:
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    return {
        "diagonal_group": om.DiagonalGroup([0.5, -1.0, 2.0, 3.5, 8.0]),
        "diagonal_cosine": om.DiagonalCosine([0.5, 1.0, 2.0, 3.5, 8.0]),
        "shift_group": om.ShiftGroup(14.0, 128),
        "matrix_group": om.MatrixGroup(0.5 * (A - A.conj().T)),
        "block_cosine_lift": om.BlockCosineLift(om.DiagonalCosine([0.5, 1.0, 2.0, 3.5])),
    }


def _random_state(model, rng):
    if isinstance(model, om.ShiftGroup):
        c = rng.uniform(-1, 1)
        return np.exp(-((model.grid - c) ** 2)) * (1 + 0.5j * rng.standard_normal())
    return rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)


def _families(model) -> list[str]:
    if isinstance(model, om.BlockCosineLift):
        return ["group"]
    if not model.has_group:
        return ["cosine", "sine"]
    return ["group", "cosine", "sine"]


def coefficient_agreement(p: dict, rng) -> CheckResult:
    """Closed-form coefficients against Gauss-Hermite quadrature of the evolution.

    The error is measured on the scale ‖x‖/√(2^d d!) of the degree-d coefficient.
    """
    n_max = int(p.get("n_max", 40))
    states = int(p.get("states", 5))
    worst = 0.0
    for model in _test_models(rng).values():
        for _ in range(states):
            x = _random_state(model, rng)
            for fam in _families(model):
                d_all = ee.hermite_degree(fam, np.arange(n_max + 1))
                rule = qd.gauss_hermite_rule(qd.rule_size_for_degree(int(d_all[-1])))
                quad = qd.coeffs_by_quadrature(lambda t: om.evolve(model, fam, t, x), d_all, rule)
                for n, d in enumerate(d_all):
                    exact = om.coeff_analytic(model, fam, n, x).to_array()
                    scale = model.norm(x) * math.exp(-0.5 * (d * math.log(2.0) + log_factorial(int(d))))
                    worst = max(worst, float(np.max(np.abs(exact - quad[int(d)]))) / scale)
    return CheckResult(worst, 0.0, "abs", {"n_max": n_max, "states": states})


def group_unitarity(p: dict, rng) -> CheckResult:
    models = _test_models(rng)
    worst = 0.0
    for key in ("diagonal_group", "matrix_group", "shift_group"):
        m = models[key]
        for _ in range(10):
            x = _random_state(m, rng)
            s, t = rng.uniform(-1, 1, size=2)
            lhs = om.evolve_group(m, s + t, x)
            rhs = om.evolve_group(m, s, om.evolve_group(m, t, x))
            worst = max(worst, m.norm(lhs - rhs) / m.norm(x), abs(m.norm(lhs) - m.norm(x)) / m.norm(x))
    return CheckResult(worst, 0.0, "abs")


def cosine_functional_equation(p: dict, rng) -> CheckResult:
    m = om.DiagonalCosine(np.arange(1, 17, dtype=float))
    worst = 0.0
    for _ in range(20):
        x = _random_state(m, rng)
        s, t = rng.uniform(-3, 3, size=2)
        lhs = om.evolve_cosine(m, t + s, x) + om.evolve_cosine(m, t - s, x)
        rhs = 2 * om.evolve_cosine(m, t, om.evolve_cosine(m, s, x))
        worst = max(worst, m.norm(lhs - rhs) / m.norm(x))
    return CheckResult(worst, 0.0, "abs")


def block_structure(p: dict, rng) -> CheckResult:
    """Largest entry in the blocks that must vanish (relative to the state norm)."""
    lift = om.BlockCosineLift(om.DiagonalCosine(np.arange(1, 9, dtype=float)))
    x = _random_state(lift, rng)
    xa, xb = lift.split(x)
    worst = 0.0
    for n in range(0, int(p.get("n_max", 40)) + 1):
        # apply the coefficient to (x, 0) and (0, y) to isolate the blocks
        ca = om.coeff_analytic(lift, "group", n, np.concatenate([xa, 0 * xb])).to_array()
        cb = om.coeff_analytic(lift, "group", n, np.concatenate([0 * xa, xb])).to_array()
        top_a, bot_a = lift.split(ca)
        top_b, bot_b = lift.split(cb)
        zero_parts = [bot_a, top_b] if n % 2 == 0 else [top_a, bot_b]
        worst = max(worst, max(float(np.max(np.abs(z))) for z in zero_parts))
    return CheckResult(worst, 0.0, "abs")


def group_cosine_identification(p: dict, rng) -> CheckResult:
    """Group coefficient of degree 2n against the cosine coefficient of degree n (log compare)."""
    q = np.array([0.5, -1.0, 2.0, 3.5, 8.0])
    g = om.DiagonalGroup(q)
    c = om.DiagonalCosine(np.abs(q))
    x = _random_state(g, rng)
    worst = 0.0
    for n in range(0, int(p.get("n_max", 100)) + 1):
        a = om.coeff_analytic(g, "group", 2 * n, x)
        b = om.coeff_analytic(c, "cosine", n, x)
        ok = np.isfinite(a.logmag)
        worst = max(worst, float(np.max(np.abs(a.logmag[ok] - b.logmag[ok]))), float(np.max(np.abs(a.unit - b.unit))))
    return CheckResult(worst, 0.0, "abs")


def even_part_chain(p: dict, rng) -> CheckResult:
    """Cosine partial sum of degree m against the even part of the group partial sum of degree 2m+1."""
    q = np.array([0.5, -1.0, 2.0, 3.5, 8.0])
    g = om.DiagonalGroup(q)
    c = om.DiagonalCosine(np.abs(q))
    x = _random_state(g, rng)
    worst = 0.0
    for t in (-1.5, 0.3, 2.0):
        for m in (5, 20, 60):
            cm = ee.cosine_partial(c, x, t, m)
            even = 0.5 * (ee.group_partial(g, x, t, 2 * m + 1) + ee.group_partial(g, x, -t, 2 * m + 1))
            worst = max(worst, float(np.max(np.abs(cm - even))))
    return CheckResult(worst, 0.0, "abs")


def holo_consistency(p: dict, rng) -> CheckResult:
    worst = 0.0
    models = [
        (om.DiagonalGroup(np.arange(1, 9, dtype=float)), "group"),
        (om.DiagonalCosine(np.arange(1, 9, dtype=float)), "cosine"),
    ]
    for model, fam in models:
        x = _random_state(model, rng)
        for _ in range(int(p.get("points", 10))):
            r = 0.2 * math.sqrt(rng.uniform())
            z = 0.25 + r * complex(math.cos(a := rng.uniform(0, 2 * math.pi)), math.sin(a))
            err = model.norm(ee.holo_series(model, x, z, 80, fam) - om.subordinated_exact(model, z, x))
            worst = max(worst, err / model.norm(x))
    return CheckResult(worst, 0.0, "abs")


def telescoping(p: dict, rng) -> CheckResult:
    model = om.DiagonalGroup(np.arange(1, 9, dtype=float))
    x = _random_state(model, rng)
    worst = 0.0
    t = 1.3
    for m in range(1, 60):
        diff = ee.group_partial(model, x, t, m) - ee.group_partial(model, x, t, m - 1)
        h = hc.hermite_poly(m, t)
        term = om.coeff_analytic(model, "group", m, x).scale_log(h.logmag).to_array() * h.sign
        worst = max(worst, float(np.max(np.abs(diff - term))))
    return CheckResult(worst, 0.0, "abs")


def fejer_consistency(p: dict, rng) -> CheckResult:
    model = om.DiagonalGroup(np.array([5.0, 6.0, -7.0, 8.0]))
    x = _random_state(model, rng)
    N = int(p.get("N", 40))
    worst = 0.0
    for t in (0.0, 1.0, 3.0):
        worst = max(worst, model.norm(ee.fejer_expansion(model, x, t, N) - om.fejer_family_direct(model, t, x, 1e-10)))
    return CheckResult(worst, 0.0, "abs", {"N": N})


def fejer_coeff_l1(p: dict, rng) -> CheckResult:
    """Closed-form L^1 norm of c_{2n} against composite quadrature."""
    worst = 0.0
    for n in range(1, int(p.get("n_max", 20)) + 1):
        exact = se.fejer_coeff_l1(n)
        worst = max(worst, abs(_c2n_l1(n) - exact) / exact)
    return CheckResult(worst, 0.0, "abs")


def _c2n_l1(n: int) -> float:
    """∫_ℝ |c_{2n}(f_·(s))| ds by composite quadrature."""

    def c(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_pow = np.where(s == 0, 0.0 if n == 1 else -np.inf, (2 * n - 2) * np.log(np.abs(s)))
        return np.exp(log_pow - s * s / 4 - 2 * n * math.log(2) - log_factorial(2 * n) - math.log(math.pi))

    return qd.lp_error_on_line(c, lambda s: 0.0 * np.asarray(s), 1.0, L=20.0 + 4.0 * math.sqrt(n))


def laguerre_vs_hermite(p: dict, rng) -> CheckResult:
    """Hermite truncation error divided by the Laguerre error at the same degree."""
    k = np.arange(1, 65, dtype=float)
    model = om.DiagonalGroup(k)
    x = k ** -2.6
    t, m = 1.0, int(p.get("m", 128))
    exact = om.evolve_group(model, t, x)
    herm = model.norm(exact - ee.group_partial(model, x, t, m))
    lag = model.norm(exact - ee.laguerre_partial(model, x, t, m, 0.0))
    return CheckResult(herm, lag, "ratio", {"m": m})


def coefficient_bounds(p: dict, rng) -> CheckResult:
    """Worst verification ratio over the group, cosine and sine coefficient bounds."""
    k = np.arange(1, 257, dtype=float)
    checks = [
        ee.lemma33_check(om.DiagonalGroup(k), k**-4.0, 2, (None, 120), "group"),
        ee.lemma33_check(om.DiagonalCosine(k), k**-6.0, 2, (None, 120), "cosine"),
        ee.lemma33_check(om.DiagonalCosine(k), k**-6.0, 1, (None, 120), "sine"),
    ]
    return CheckResult(max(c.worst_verify_ratio for c in checks), 1.0, "upper")


def muckenhoupt(p: dict, rng) -> CheckResult:
    fit = hc.muckenhoupt_calibrate(int(p.get("n_lo", 10)), int(p.get("n_hi", 40)))
    value = fit.worst_verify_ratio if fit.consequence_holds else math.inf
    return CheckResult(value, 1.0, "upper", {"C": fit.C})


CHECKS: dict[str, Callable[[dict, np.random.Generator], CheckResult]] = {
    "kernel_recurrence": kernel_recurrence,
    "kernel_ode": kernel_ode,
    "derivative_fd": derivative_fd,
    "parity": parity,
    "norm_bound_p1": norm_bound_p1,
    "extremum_identity": extremum_identity,
    "rule_moments": rule_moments,
    "discrete_orthonormality": discrete_orthonormality,
    "scalar_series": scalar_series,
    "eta_l2": eta_l2,
    "coefficient_agreement": coefficient_agreement,
    "group_unitarity": group_unitarity,
    "cosine_functional_equation": cosine_functional_equation,
    "block_structure": block_structure,
    "group_cosine_identification": group_cosine_identification,
    "even_part_chain": even_part_chain,
    "holo_consistency": holo_consistency,
    "telescoping": telescoping,
    "fejer_consistency": fejer_consistency,
    "fejer_coeff_l1": fejer_coeff_l1,
    "laguerre_vs_hermite": laguerre_vs_hermite,
    "coefficient_bounds": coefficient_bounds,
    "muckenhoupt": muckenhoupt,
}
