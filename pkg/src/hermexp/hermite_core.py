"""Overflow-safe Hermite polynomials, Hermite functions and the kernels h_n.

Everything is evaluated through one forward recurrence for the orthonormal
Hermite functions.  The Gaussian factor is kept out of the recurrence and the
mantissa is rescaled whenever it grows large, so the recurrence yields
``log|H_n(t) e^{-t^2/2} / sqrt(2^n n! sqrt(pi))| + t^2/2`` for any finite t and
every other family is obtained by adding known logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigvalsh_tridiagonal

from .signedlog import (
    LOG_MAX,
    NEG_INF,
    SignedLogValue,
    exp_checked,
    log_factorial,
    log_hermite_norm,
)

DEGREE_CAP = 4096
PI_M14 = math.pi ** -0.25

_RESCALE_AT = 1e150
_LOG_RESCALE = math.log(_RESCALE_AT)


class QuadratureError(RuntimeError):
    """A quadrature did not reach its tolerance; ``achieved`` holds the estimate."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved


def _check_degree(N: int, cap: int = DEGREE_CAP) -> int:
    if int(N) != N or N < 0:
        raise ValueError(f"degree must be a non-negative integer, got {N}")
    if N > cap:
        raise ValueError(f"degree {N} exceeds the degree cap {cap}")
    return int(N)


def _check_points(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("evaluation points must be finite")
    return t


@lru_cache(maxsize=None)
def _recurrence_coeffs(N: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(N, dtype=float)
    a = np.sqrt(2.0 / (n + 1.0))
    b = np.sqrt(n / (n + 1.0))
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def iter_scaled_ortho(t, N: int, cap: int = DEGREE_CAP) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(n, mantissa, logscale)`` for n = 0..N.

    ``mantissa * exp(logscale)`` equals ``ℋ_n(t) e^{t^2/2}``.  Yielded arrays are
    never modified afterwards, so callers may keep references.
    """
    N = _check_degree(N, cap)
    t = _check_points(t)
    a, b = _recurrence_coeffs(max(N, 1))
    prev = np.zeros_like(t)
    cur = np.full_like(t, PI_M14)
    scale = np.zeros_like(t)
    yield 0, cur, scale
    for n in range(N):
        nxt = a[n] * t * cur - b[n] * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if np.any(big):
            shrink = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            prev = prev * shrink
            cur = cur * shrink
            scale = scale + np.where(big, _LOG_RESCALE, 0.0)
        yield n + 1, cur, scale


def scaled_ortho_log_table(t, N: int, cap: int = DEGREE_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Signs and logs of ``ℋ_n(t) e^{t^2/2}`` for n = 0..N, shape ``(N+1,) + t.shape``."""
    t = _check_points(t)
    sign = np.empty((N + 1,) + t.shape)
    logmag = np.empty((N + 1,) + t.shape)
    with np.errstate(divide="ignore"):
        for n, mant, scale in iter_scaled_ortho(t, N, cap):
            sign[n] = np.sign(mant)
            logmag[n] = np.log(np.abs(mant)) + scale
    return sign, logmag


def _scaled_ortho_at(n: int, t) -> tuple[np.ndarray, np.ndarray]:
    """Sign and log of ``ℋ_n(t) e^{t^2/2}`` for a single degree."""
    for k, mant, scale in iter_scaled_ortho(t, n):
        if k == n:
            with np.errstate(divide="ignore"):
                return np.sign(mant), np.log(np.abs(mant)) + scale
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class OrthoHermiteSequence:
    """Values ℋ_0(t)..ℋ_N(t) of the orthonormal Hermite functions at one point."""

    t: float
    values: np.ndarray = field(repr=False)

    @property
    def max_degree(self) -> int:
        return len(self.values) - 1


def ortho_hermite_seq(t: float, N: int, max_degree: int = DEGREE_CAP) -> OrthoHermiteSequence:
    """ℋ_0(t)..ℋ_N(t) by the forward orthonormal recurrence."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    sign, logmag = scaled_ortho_log_table(np.array(t), N, max_degree)
    values = sign * np.exp(logmag - 0.5 * t * t)
    values.setflags(write=False)
    return OrthoHermiteSequence(t, values)


def ortho_hermite(n: int, t) -> np.ndarray:
    """ℋ_n(t), vectorized over t (underflows to 0 far in the tails)."""
    t = _check_points(t)
    sign, logmag = _scaled_ortho_at(_check_degree(n), t)
    return sign * np.exp(logmag - 0.5 * t * t)


def hermite_poly_log(n: int, t) -> tuple[np.ndarray, np.ndarray]:
    """Sign and natural log of |H_n(t)|, vectorized over t."""
    n = _check_degree(n)
    sign, logmag = _scaled_ortho_at(n, _check_points(t))
    return sign, logmag + 0.5 * log_hermite_norm(n)


def hermite_log_table(t, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Signs and logs of |H_n(t)| for n = 0..N, shape ``(N+1,) + t.shape``."""
    sign, logmag = scaled_ortho_log_table(t, N)
    half_norm = 0.5 * log_hermite_norm(np.arange(N + 1))
    return sign, logmag + half_norm.reshape((-1,) + (1,) * (logmag.ndim - 1))


def hermite_poly(n: int, t: float) -> SignedLogValue:
    """H_n(t) as a ``SignedLogValue``."""
    sign, logmag = hermite_poly_log(n, float(t))
    if sign == 0:
        return SignedLogValue(0, NEG_INF)
    return SignedLogValue(int(sign), float(logmag))


def h_fn_log(n: int, t) -> tuple[np.ndarray, np.ndarray]:
    """Sign and log|h_n(t)| where h_n = e^{-t^2} H_n / (2^n n! sqrt(pi))."""
    n = _check_degree(n)
    t = _check_points(t)
    sign, logmag = _scaled_ortho_at(n, t)
    return sign, logmag - t * t - 0.5 * log_hermite_norm(n)


def h_fn(n: int, t):
    """The kernel h_n(t); underflows to 0 for large |t|."""
    sign, logmag = h_fn_log(n, t)
    out = sign * np.exp(logmag)
    return float(out) if np.ndim(out) == 0 else out


def h_fn_deriv(n: int, k: int, t):
    """k-th derivative of h_n via h_n^{(k)} = (-1)^k 2^k (n+1)...(n+k) h_{n+k}."""
    n = _check_degree(n)
    k = _check_degree(k)
    sign, logmag = h_fn_log(n + k, t)
    log_pref = k * math.log(2.0) + log_factorial(n + k) - log_factorial(n)
    out = (-1) ** k * sign * exp_checked(logmag + log_pref)
    return float(out) if np.ndim(out) == 0 else out


def hermite_zeros(n: int) -> np.ndarray:
    """The n zeros of H_n, increasing and exactly symmetric about 0."""
    n = _check_degree(n)
    if n < 1:
        raise ValueError("H_0 has no zeros")
    if n == 1:
        return np.zeros(1)
    off = np.sqrt(np.arange(1, n) / 2.0)
    r = eigvalsh_tridiagonal(np.zeros(n), off)
    # One Newton step on h_n, using h_n' = -2(n+1) h_{n+1}.  Both factors share
    # the Gaussian and the scale, so the ratio is formed from the mantissas.
    m_n = m_next = None
    for k, mant, scale in iter_scaled_ortho(r, n + 1, cap=DEGREE_CAP + 1):
        if k == n:
            m_n, s_n = mant, scale
        elif k == n + 1:
            m_next, s_next = mant, scale
    r = r + m_n * np.exp(s_n - s_next) / (math.sqrt(2.0 * (n + 1)) * m_next)
    r = 0.5 * (r - r[::-1])
    if n % 2 == 1:
        r[n // 2] = 0.0
    return r


@lru_cache(maxsize=8)
def _gauss_legendre(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(m)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _log_integral_pieces(log_f, breaks: np.ndarray, m: int) -> np.ndarray:
    """Nodes, weights and log-integrand values for Gauss-Legendre on each interval.

    The substitution t = a + (b-a)(1-cos(pi u))/2 clusters nodes at the
    endpoints, where |h_n|^p has its kinks.
    """
    x, w = _gauss_legendre(m)
    a = breaks[:-1, None]
    b = breaks[1:, None]
    u = 0.5 * (x + 1.0)
    s = 0.5 * (1.0 - np.cos(np.pi * u))
    t = a + (b - a) * s
    jac = (b - a) * 0.5 * np.pi * np.sin(np.pi * u) * 0.5
    return t, w * jac, log_f(t)


def h_norm_log(n: int, p: float) -> float:
    """log of the L^p norm of h_n on the real line (p may be ``math.inf``)."""
    n = _check_degree(n)
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    half_norm = 0.5 * log_hermite_norm(n)
    if math.isinf(p):
        pts = np.concatenate([[0.0], hermite_zeros(n + 1)])
        _, lm = h_fn_log(n, pts)
        return float(np.max(lm))

    def log_abs(t):
        _, lm = _scaled_ortho_at(n, t)
        return p * (lm - t * t - half_norm)

    zeros = hermite_zeros(n) if n >= 1 else np.zeros(0)
    inner = np.concatenate([[0.0], zeros[zeros > 0]])
    last = inner[-1]
    # Extend the tail until |h_n|^p has dropped 46 e-folds below its peak.
    probe = last + 0.25 * np.arange(1, 400)
    lp = log_abs(probe)
    peak = max(float(np.max(lp)), float(np.max(log_abs(np.linspace(0, last, 64))) if last > 0 else lp[0]))
    below = np.nonzero((lp < peak - 46.0) & (np.arange(lp.size) > np.argmax(lp)))[0]
    end = probe[below[0]] if below.size else probe[-1]
    tail = np.linspace(last, end, int(math.ceil(end - last)) + 1)
    breaks = np.concatenate([inner, tail[1:]])

    def estimate(br, m):
        t, wj, lf = _log_integral_pieces(log_abs, br, m)
        ref = float(np.max(lf))
        return ref, float(np.sum(wj * np.exp(lf - ref)))

    for _ in range(4):
        ref1, s1 = estimate(breaks, 40)
        ref2, s2 = estimate(breaks, 60)
        total2 = s2 * math.exp(ref2 - ref1)
        rel = abs(total2 - s1) / abs(total2)
        if rel < 1e-11:
            return (math.log(2.0 * s2) + ref2) / p
        mids = 0.5 * (breaks[:-1] + breaks[1:])
        breaks = np.sort(np.concatenate([breaks, mids]))
    raise QuadratureError(f"h_norm(n={n}, p={p}) did not converge", rel)


def h_norm(n: int, p: float) -> float:
    """L^p norm of h_n (underflows to 0 for n beyond roughly 260)."""
    return math.exp(h_norm_log(n, p))


@dataclass(frozen=True)
class MuckenhouptFit:
    C: float
    gamma: float
    holds: bool
    fit_range: tuple[int, int]
    verify_range: tuple[int, int]
    worst_verify_ratio: float
    consequence_holds: bool


def muckenhoupt_bound(n: int, t, C: float, gamma: float = 0.125):
    """Two-branch envelope for |ℋ_n(t)| with N = 2n+1."""
    t = np.asarray(t, dtype=float)
    N = 2 * n + 1
    inner = (N ** (1.0 / 3.0) + np.abs(N - t * t)) ** -0.25
    outer = np.exp(-gamma * t * t)
    return C * np.where(t * t <= 2 * N, inner, outer)


def muckenhoupt_calibrate(n_lo: int, n_hi: int, gamma: float = 0.125) -> MuckenhouptFit:
    """Fit the smallest C on [n_lo, n_hi], then test it on [n_hi, 4 n_hi].

    The ratio |ℋ_n(t)| / envelope is sampled on a t-grid dense enough to
    resolve the oscillations of the highest degree; only t >= 0 is needed by
    parity.
    """
    if not 1 <= n_lo < n_hi:
        raise ValueError("need 1 <= n_lo < n_hi")
    top = 4 * n_hi
    N_top = 2 * top + 1
    t_end = 1.25 * math.sqrt(2.0 * N_top) + 4.0
    step = min(0.01, 0.05 * math.pi / math.sqrt(2.0 * N_top))
    t = np.linspace(0.0, t_end, int(math.ceil(t_end / step)) + 1)
    half_t2 = 0.5 * t * t
    fit_max = 0.0
    verify_max = 0.0
    C = math.nan
    consequence_ok = True
    with np.errstate(divide="ignore"):
        for n, mant, scale in iter_scaled_ortho(t, top):
            if n < n_lo:
                continue
            N = 2 * n + 1
            log_scaled = np.log(np.abs(mant)) + scale
            inner = -0.25 * np.log(N ** (1.0 / 3.0) + np.abs(N - t * t))
            osc = t * t <= 2 * N
            log_env = np.where(osc, inner, -gamma * t * t)
            ratio = float(np.max(np.exp(log_scaled - half_t2 - log_env)))
            if n <= n_hi:
                fit_max = max(fit_max, ratio)
            if n == n_hi:
                if not math.isfinite(fit_max) or fit_max <= 0:
                    raise ValueError("no finite constant bounds the sampled ratios")
                C = fit_max
            if n >= n_hi:
                verify_max = max(verify_max, ratio)
                # |H_n(t)| <= C pi^{1/4} e^{t^2/2} sqrt(2^n n!) n^{-1/12} where t^2 <= 2N
                log_H = log_scaled[osc] + 0.5 * log_hermite_norm(n)
                bound = (
                    math.log(C) + 0.25 * math.log(math.pi) + half_t2[osc]
                    + 0.5 * (n * math.log(2.0) + log_factorial(n)) - math.log(n) / 12.0
                )
                if np.any(log_H > bound + 1e-12):
                    consequence_ok = False
    return MuckenhouptFit(
        C=C,
        gamma=gamma,
        holds=verify_max <= C * (1.0 + 1e-12),
        fit_range=(n_lo, n_hi),
        verify_range=(n_hi, top),
        worst_verify_ratio=verify_max / C,
        consequence_holds=consequence_ok,
    )


__all__ = [
    "DEGREE_CAP",
    "LOG_MAX",
    "MuckenhouptFit",
    "OrthoHermiteSequence",
    "QuadratureError",
    "h_fn",
    "h_fn_deriv",
    "h_fn_log",
    "h_norm",
    "h_norm_log",
    "hermite_log_table",
    "hermite_poly",
    "hermite_poly_log",
    "hermite_zeros",
    "iter_scaled_ortho",
    "muckenhoupt_bound",
    "muckenhoupt_calibrate",
    "ortho_hermite",
    "ortho_hermite_seq",
    "scaled_ortho_log_table",
]
