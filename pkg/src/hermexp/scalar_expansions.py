"""Closed-form scalar Hermite expansions and their partial sums.

Covered series: e^{λt}, cos(√a t), the Dirichlet kernel d_t(s) = sin(ts)/(πs),
the Fejér kernel f_t(s) = (1 − cos(ts))/(πs²) and η_λ(t) = e^{−t²}e^{λt}.
Every term is assembled as exp(log|coefficient| + log|H_n(t)|) times a unit
phase, then summed with compensation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hermite_core import hermite_log_table, scaled_ortho_log_table
from .quadrature import _node_factors, gauss_hermite_rule, lp_error_on_line, rule_size_for_degree
from .signedlog import exp_checked, log_factorial, log_hermite_norm, neumaier_sum

LOG2 = math.log(2.0)
SMALL_S = 1e-4


def unit_powers(z: complex, n) -> np.ndarray:
    """(z/|z|)^n, exact when z is real or purely imaginary."""
    n = np.asarray(n, dtype=np.int64)
    z = complex(z)
    if z == 0:
        return np.ones(n.shape, dtype=complex)
    if z.imag == 0.0:
        return np.where((n % 2 == 1) & (z.real < 0), -1.0, 1.0).astype(complex)
    if z.real == 0.0:
        quarter = np.array([1, 1j, -1, -1j], dtype=complex)
        k = n % 4 if z.imag > 0 else (-n) % 4
        return quarter[k]
    return np.exp(1j * n * cmath.phase(z))


def log_abs_power(z: complex, n) -> np.ndarray:
    """n·log|z| with the convention 0^0 = 1."""
    n = np.asarray(n, dtype=float)
    if z == 0:
        return np.where(n == 0, 0.0, -np.inf)
    return n * math.log(abs(z))


def _series_value(log_coef, unit_coef, t: float, degrees) -> complex:
    """Σ_j exp(log_coef_j + log|H_{d_j}(t)|)·sign·unit_j, compensated."""
    degrees = np.asarray(degrees, dtype=np.int64)
    sign, log_h = hermite_log_table(np.array(float(t)), int(degrees.max()))
    terms = sign[degrees] * unit_coef * exp_checked(log_coef + log_h[degrees])
    return complex(neumaier_sum(terms))


def exp_partial(lam: complex, t: float, m: int) -> complex:
    """Σ_{n≤m} λ^n e^{λ²/4} H_n(t) / (2^n n!)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    lam = complex(lam)
    n = np.arange(m + 1)
    q = lam * lam / 4.0
    log_c = log_abs_power(lam, n) + q.real - n * LOG2 - log_factorial(n)
    unit = unit_powers(lam, n) * cmath.exp(1j * q.imag)
    return _series_value(log_c, unit, t, n)


def cos_partial(a: float, t: float, m: int) -> float:
    """Σ_{n≤m} (−a)^n e^{−a/4} H_{2n}(t) / (2^{2n} (2n)!)."""
    if not a > 0:
        raise ValueError("the cosine series needs a > 0")
    if m < 0:
        raise ValueError("m must be non-negative")
    n = np.arange(m + 1)
    log_c = n * math.log(a) - a / 4.0 - 2 * n * LOG2 - log_factorial(2 * n)
    unit = np.where(n % 2 == 1, -1.0, 1.0)
    return _series_value(log_c, unit, t, 2 * n).real


def dirichlet_coeffs_log(s: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(1, N + 1)
    log_s = math.log(abs(s)) if s != 0 else -math.inf
    with np.errstate(invalid="ignore"):
        log_pow = np.where(n == 1, 0.0, (2 * n - 2) * log_s)
    log_c = log_pow - s * s / 4.0 - (2 * n - 1) * LOG2 - log_factorial(2 * n - 1) - math.log(math.pi)
    return np.where(n % 2 == 0, -1.0, 1.0), log_c


def dirichlet_coeffs(s: float, N: int) -> np.ndarray:
    """c_1, c_3, ..., c_{2N−1} of t ↦ d_t(s); even-index coefficients vanish."""
    sign, log_c = dirichlet_coeffs_log(float(s), N)
    return sign * np.exp(log_c)


def fejer_c0(s: float) -> float:
    """c_0 = (1 − e^{−s²/4})/(πs²), with a Taylor series for |s| < 1e−4."""
    s = float(s)
    u = s * s / 4.0
    if abs(s) < SMALL_S:
        ratio = 1 - u / 2 + u**2 / 6 - u**3 / 24 + u**4 / 120 - u**5 / 720
        return ratio / (4.0 * math.pi)
    return -math.expm1(-u) / (math.pi * s * s)


def fejer_coeffs_log(s: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(1, N + 1)
    log_s = math.log(abs(s)) if s != 0 else -math.inf
    with np.errstate(invalid="ignore"):
        log_pow = np.where(n == 1, 0.0, (2 * n - 2) * log_s)
    log_c = log_pow - s * s / 4.0 - 2 * n * LOG2 - log_factorial(2 * n) - math.log(math.pi)
    return np.where(n % 2 == 0, -1.0, 1.0), log_c


def fejer_coeffs(s: float, N: int) -> tuple[float, np.ndarray]:
    """(c_0, [c_2, c_4, ..., c_{2N}]) of t ↦ f_t(s)."""
    sign, log_c = fejer_coeffs_log(float(s), N)
    return fejer_c0(s), sign * np.exp(log_c)


def fejer_coeff_l1(n: int) -> float:
    """∫_ℝ |c_{2n}(f_·(s))| ds = 1 / ((2n−1) 2^{2n} n! √π), from the Gaussian moments."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.exp(-math.log(2 * n - 1) - 2 * n * LOG2 - log_factorial(n) - 0.5 * math.log(math.pi))


def dirichlet_partial(s: float, t: float, N: int) -> float:
    sign, log_c = dirichlet_coeffs_log(float(s), N)
    return _series_value(log_c, sign, t, 2 * np.arange(1, N + 1) - 1).real


def fejer_partial(s: float, t: float, N: int) -> float:
    sign, log_c = fejer_coeffs_log(float(s), N)
    return fejer_c0(s) + _series_value(log_c, sign, t, 2 * np.arange(1, N + 1)).real


def dirichlet_kernel(s: float, t: float) -> float:
    """d_t(s) = sin(ts)/(πs), with value t/π at s = 0."""
    if s == 0:
        return t / math.pi
    return math.sin(t * s) / (math.pi * s)


def fejer_kernel(s: float, t: float) -> float:
    """f_t(s) = (1 − cos(ts))/(πs²) = 2 sin²(ts/2)/(πs²), with value t²/(2π) at s = 0."""
    if s == 0:
        return t * t / (2 * math.pi)
    return 2.0 * math.sin(0.5 * t * s) ** 2 / (math.pi * s * s)


def eta(lam: complex, t):
    """η_λ(t) = e^{−t²} e^{λt}."""
    t = np.asarray(t, dtype=float)
    return np.exp(-t * t + complex(lam) * t)


def eta_partial(lam: complex, t, m: int):
    """√π e^{λ²/4} Σ_{n≤m} λ^n h_n(t), vectorized over t."""
    lam = complex(lam)
    t = np.asarray(t, dtype=float)
    n = np.arange(m + 1)
    sign, log_m = scaled_ortho_log_table(t, m)
    expand = (-1,) + (1,) * t.ndim
    q = lam * lam / 4.0
    log_c = (log_abs_power(lam, n) + q.real - 0.5 * log_hermite_norm(n)).reshape(expand)
    unit = unit_powers(lam, n).reshape(expand)
    terms = sign * unit * np.exp(log_c + log_m - t * t)
    return math.sqrt(math.pi) * cmath.exp(1j * q.imag) * neumaier_sum(terms, axis=0)


def eta_partial_error(lam: complex, m: int, p: float) -> float:
    """‖η_λ − √π e^{λ²/4} Σ_{n≤m} λ^n h_n‖_p."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return lp_error_on_line(lambda t: eta(lam, t), lambda t: eta_partial(lam, t, m), p)


def lematec_term(phi: Callable, n: int, rule_size: int | None = None) -> float:
    """n^{1/4} (2^n n! √π)^{−1/2} ∫ e^{−t²} H_n(t) φ(t) dt.

    Equivalent to n^{1/4} ∫ e^{−t²/2} ℋ_n(t) φ(t) dt, integrated with a
    Gauss-Hermite rule whose node factors never leave the log domain.
    """
    size = rule_size or max(rule_size_for_degree(n), 128)
    rule = gauss_hermite_rule(size)
    vals = np.array([float(phi(float(x))) for x in rule.nodes])
    if not np.all(np.isfinite(vals)):
        raise ValueError("phi returned a non-finite value")
    factors = _node_factors(rule, [n], normalized=False)[n]
    return n**0.25 * float(neumaier_sum(factors * vals))


_KINDS = ("exponential", "cosine", "dirichlet", "fejer", "eta")


@dataclass(frozen=True)
class ScalarSeriesSpec:
    """One of the closed-form scalar series with its parameter."""

    kind: str
    param: complex
    max_degree: int = 80

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}; expected one of {_KINDS}")
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        if self.kind == "cosine" and not (complex(self.param).imag == 0 and complex(self.param).real > 0):
            raise ValueError("the cosine series needs a real a > 0")
        if self.kind in ("dirichlet", "fejer") and complex(self.param).imag != 0:
            raise ValueError("kernel parameter s must be real")

    def partial(self, t: float, m: int | None = None) -> complex:
        m = self.max_degree if m is None else m
        p = complex(self.param)
        if self.kind == "exponential":
            return exp_partial(p, t, m)
        if self.kind == "cosine":
            return cos_partial(p.real, t, m)
        if self.kind == "dirichlet":
            return dirichlet_partial(p.real, t, m)
        if self.kind == "fejer":
            return fejer_partial(p.real, t, m)
        return complex(eta_partial(p, t, m))

    def exact(self, t: float) -> complex:
        p = complex(self.param)
        if self.kind == "exponential":
            return cmath.exp(p * t)
        if self.kind == "cosine":
            return math.cos(math.sqrt(p.real) * t)
        if self.kind == "dirichlet":
            return dirichlet_kernel(p.real, t)
        if self.kind == "fejer":
            return fejer_kernel(p.real, t)
        return complex(eta(p, t))


__all__ = [
    "ScalarSeriesSpec",
    "cos_partial",
    "dirichlet_coeffs",
    "dirichlet_kernel",
    "dirichlet_partial",
    "eta",
    "eta_partial",
    "eta_partial_error",
    "exp_partial",
    "fejer_c0",
    "fejer_coeff_l1",
    "fejer_coeffs",
    "fejer_kernel",
    "fejer_partial",
    "lematec_term",
    "log_abs_power",
    "unit_powers",
]
