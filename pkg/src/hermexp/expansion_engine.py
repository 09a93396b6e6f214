"""Truncated Hermite expansions of groups, cosine and sine families, and their diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import erfcx

from .hermite_core import hermite_log_table, scaled_ortho_log_table
from .operator_models import (
    BlockCosineLift,
    DiagonalCosine,
    DiagonalGroup,
    MatrixGroup,
    Model,
    UnsupportedOperation,
    _as_state,
    evolve,
    modal_coeff_log,
    resolvent_power,
)
from .signedlog import LogVector, exp_checked, log_factorial, log_hermite_norm, neumaier_cumsum, neumaier_sum

LOG2 = math.log(2.0)


def hermite_degree(family: str, n: np.ndarray) -> np.ndarray:
    """Degree of the Hermite polynomial multiplying the n-th coefficient."""
    if family == "group":
        return n
    if family == "cosine":
        return 2 * n
    if family == "sine":
        return 2 * n + 1
    raise ValueError(f"unknown family {family!r}")


def _modal_terms(model: Model, family: str, x, t: float, m: int) -> np.ndarray:
    """Modal terms coefficient_n·H_d(t) for n = 0..m, shape (m+1, dim)."""
    y = model.to_modal(_as_state(x, model.dim))
    n = np.arange(m + 1)
    log_c, unit = modal_coeff_log(model, family, n, y)
    d = hermite_degree(family, n)
    sign_h, log_h = hermite_log_table(np.array(float(t)), int(d[-1]))
    return sign_h[d][:, None] * unit * exp_checked(log_c + log_h[d][:, None])


def partial_sums(model: Model, family: str, x, t: float, degrees: Sequence[int]) -> list[np.ndarray]:
    """Partial sums at several truncation degrees, sharing one coefficient table.

    Each result equals the single-degree partial sum bit for bit.
    """
    degrees = [int(m) for m in degrees]
    if any(m < 0 for m in degrees):
        raise ValueError("truncation degrees must be non-negative")
    terms = _modal_terms(model, family, x, t, max(degrees))
    return [model.from_modal(s) for s in neumaier_cumsum(terms, degrees, axis=0)]


def group_partial(model: Model, x, t: float, m: int) -> np.ndarray:
    """T_m(t)x = Σ_{n≤m} A^n T^{(g)}(1/4)x H_n(t) / (2^n n!)."""
    return partial_sums(model, "group", x, t, [m])[0]


def cosine_partial(model: Model, x, t: float, m: int) -> np.ndarray:
    """C_m(t)x = Σ_{n≤m} A^n T^{(c)}(1/4)x H_{2n}(t) / (2^{2n}(2n)!)."""
    return partial_sums(model, "cosine", x, t, [m])[0]


def sine_partial(model: Model, x, t: float, m: int) -> np.ndarray:
    """S_m(t)x = Σ_{n≤m} A^n T^{(c)}(1/4)x H_{2n+1}(t) / (2^{2n+1}(2n+1)!)."""
    return partial_sums(model, "sine", x, t, [m])[0]


def partial_from_coefficients(coeffs: Sequence, family: str, t: float) -> np.ndarray:
    """Σ coeffs[n]·H_d(t) for coefficient vectors obtained some other way.

    Entries may be plain arrays or ``LogVector``s; the latter are combined with
    H_d(t) in log form.
    """
    n = np.arange(len(coeffs))
    d = hermite_degree(family, n)
    sign_h, log_h = hermite_log_table(np.array(float(t)), int(d[-1]))
    if all(isinstance(c, LogVector) for c in coeffs):
        log_mag = np.stack([c.logmag for c in coeffs]) + log_h[d][:, None]
        unit = np.stack([c.unit for c in coeffs]) * sign_h[d][:, None]
        return neumaier_sum(unit * exp_checked(log_mag), axis=0)
    arr = np.asarray([c.to_array() if isinstance(c, LogVector) else c for c in coeffs], dtype=complex)
    return neumaier_sum(arr * (sign_h[d] * np.exp(log_h[d]))[:, None], axis=0)


def holo_series(model: Model, x, z: complex, m: int, family: str = "group") -> np.ndarray:
    """Power series of the subordinated semigroup around z = 1/4.

    group: Σ A^{2n} T^{(g)}(1/4)x (4z−1)^n / (2^{2n} n!);
    cosine: Σ A^n T^{(c)}(1/4)x (4z−1)^n / (2^{2n} n!).
    In modal coordinates both are Σ (−ω²(4z−1)/4)^n e^{−ω²/4} y / n!.
    """
    z = complex(z)
    if not abs(z - 0.25) < 0.25:
        raise ValueError("z must lie in the open disk |z - 1/4| < 1/4")
    if isinstance(model, BlockCosineLift):
        raise UnsupportedOperation("holomorphic series are defined for the inner model")
    if family == "group" and not model.has_group:
        raise UnsupportedOperation(f"{model.name} does not generate a group")
    if family not in ("group", "cosine"):
        raise ValueError("family must be 'group' or 'cosine'")
    y = model.to_modal(_as_state(x, model.dim))
    w = model.omega
    u = 4.0 * z - 1.0
    if u == 0:
        # only the n = 0 term survives
        return model.from_modal(np.exp(-(w * w) / 4.0) * y)
    n = np.arange(m + 1)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_w = np.log(w)[None, :]
        log_u = math.log(abs(u)) if u != 0 else -math.inf
        log_mag = np.where(n == 0, 0.0, n * (2.0 * log_w - 2.0 * LOG2 + log_u))
        log_y = np.log(np.abs(y))[None, :]
    log_mag = log_mag - (w * w / 4.0)[None, :] - log_factorial(n) + log_y
    phase = (-u / abs(u)) if u != 0 else 1.0
    unit = phase**n * np.where(np.abs(y) > 0, y / np.where(np.abs(y) > 0, np.abs(y), 1.0), 0.0)[None, :]
    terms = np.exp(log_mag) * unit
    return model.from_modal(neumaier_sum(terms, axis=0))


def _fejer_constant(w: np.ndarray) -> np.ndarray:
    """∫ (1 − e^{−s²/4})/(πs²) e^{iωs} ds = e^{−ω²}/√π − |ω| erfc(|ω|)."""
    w = np.abs(w)
    return np.exp(-w * w) * (1.0 / math.sqrt(math.pi) - w * erfcx(w))


def _fejer_modal_terms(model: Model, x, t: float, N: int, family: str):
    if family == "group" and not model.has_group:
        raise UnsupportedOperation(f"{model.name} does not generate a group")
    if family not in ("group", "cosine"):
        raise ValueError("family must be 'group' or 'cosine'")
    if isinstance(model, BlockCosineLift) and family != "group":
        raise UnsupportedOperation("the block lift is a group model")
    y = model.to_modal(_as_state(x, model.dim))
    w = model.omega
    if isinstance(model, BlockCosineLift):
        w = np.concatenate([w, w])
    const = _fejer_constant(w) * y
    if N == 0:
        return const, np.zeros((0, y.size), dtype=complex)
    n = np.arange(1, N + 1)
    # ∫ c_{2n}(s) e^{iωs} ds = h_{2n−2}(ω) / (4n(2n−1)), with c_{2n} the Fejér kernel coefficients
    sign_m, log_m = scaled_ortho_log_table(w, 2 * N - 2)
    k = 2 * n - 2
    log_h = log_m[k] - (w * w)[None, :] - 0.5 * log_hermite_norm(k)[:, None]
    log_coef = log_h - np.log(4.0 * n * (2 * n - 1))[:, None]
    sign_H, log_H = hermite_log_table(np.array(float(t)), 2 * N)
    terms = (sign_m[k] * sign_H[2 * n][:, None]) * exp_checked(log_coef + log_H[2 * n][:, None]) * y[None, :]
    return const, terms


def fejer_expansion(model: Model, x, t: float, N: int, family: str = "group") -> np.ndarray:
    """Hermite expansion of the Fejér family ℱ(t)x truncated after H_{2N}(t).

    The s-integrals of the Fejér kernel coefficients against the family have
    closed forms per mode: the constant term is e^{−ω²}/√π − ω erfc(ω) and the
    n-th term carries h_{2n−2}(ω) / (4n(2n−1)).
    """
    const, terms = _fejer_modal_terms(model, x, t, N, family)
    total = neumaier_sum(np.vstack([const[None, :], terms]), axis=0)
    return model.from_modal(total)


def fejer_term_norms(model: Model, x, t: float, N: int, family: str = "group") -> np.ndarray:
    """‖term_n‖ for n = 1..N of the Fejér expansion, in the model norm."""
    _, terms = _fejer_modal_terms(model, x, t, N, family)
    return np.array([model.norm(model.from_modal(row)) for row in terms])


def fejer_exact_diagonal(model: Model, x, t: float) -> np.ndarray:
    """(|t| − ω)_+ per mode: the value of ℱ(t)x for diagonalizable models."""
    y = model.to_modal(_as_state(x, model.dim))
    w = model.omega
    if isinstance(model, BlockCosineLift):
        w = np.concatenate([w, w])
    return model.from_modal(np.maximum(abs(float(t)) - w, 0.0) * y)


def laguerre_values(t: float, m: int, alpha: float) -> np.ndarray:
    """L_0^{(α)}(t)..L_m^{(α)}(t) by (n+1)L_{n+1} = (2n+1+α−t)L_n − (n+α)L_{n−1}."""
    out = np.empty(m + 1)
    out[0] = 1.0
    if m >= 1:
        out[1] = 1.0 + alpha - t
    for n in range(1, m):
        out[n + 1] = ((2 * n + 1 + alpha - t) * out[n] - (n + alpha) * out[n - 1]) / (n + 1)
    return out


def laguerre_partial(model: Model, x, t: float, m: int, alpha: float = 0.0) -> np.ndarray:
    """Σ_{n≤m} (−A)^n (1−A)^{−n−α−1} x L_n^{(α)}(t)."""
    if not t > 0:
        raise ValueError("t must be positive")
    if not isinstance(model, (DiagonalGroup, MatrixGroup)):
        raise UnsupportedOperation("Laguerre expansions need resolvent powers")
    L = laguerre_values(float(t), m, alpha)
    terms = np.array([resolvent_power(model, n, alpha, x) * L[n] for n in range(m + 1)])
    return neumaier_sum(terms, axis=0)


@dataclass(frozen=True)
class ErrorCurve:
    degrees: tuple[int, ...]
    errors: tuple[float, ...]
    norm: str
    t: float
    family: str = "group"

    def __post_init__(self):
        if len(self.degrees) != len(self.errors):
            raise ValueError("degrees and errors differ in length")
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("degrees must be strictly increasing")


def _norm_order(norm: str) -> float:
    if norm in ("l2", "L2"):
        return 2.0
    if norm in ("linf", "Linf"):
        return math.inf
    raise ValueError(f"unknown norm {norm!r}")


def error_curve(model: Model, x, t: float, degrees: Sequence[int], family: str = "group", norm: str = "l2") -> ErrorCurve:
    degrees = tuple(int(m) for m in degrees)
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")
    exact = evolve(model, family, t, x)
    p = _norm_order(norm)
    sums = partial_sums(model, family, x, t, degrees)
    errors = tuple(model.norm(exact - s, p) for s in sums)
    return ErrorCurve(degrees, errors, norm, float(t), family)


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    residual: float
    window: tuple[int, int]


def rate_fit(curve: ErrorCurve, drop: int = 1) -> RateFit:
    """Least-squares line through (log m, log error) after dropping ``drop`` points.

    The window stops at the first zero error.
    """
    if len(curve.degrees) < drop + 4:
        raise ValueError(f"need at least {drop + 4} points, curve has {len(curve.degrees)}")
    m, e = [], []
    for deg, err in list(zip(curve.degrees, curve.errors))[drop:]:
        if err <= 0:
            break
        m.append(deg)
        e.append(err)
    if len(m) < 3:
        raise ValueError("fewer than 3 positive errors in the fit window")
    lx, ly = np.log(m), np.log(e)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return RateFit(float(slope), float(intercept), resid, (m[0], m[-1]))


@dataclass(frozen=True)
class BoundCheck:
    C: float
    holds: bool
    worst_verify_ratio: float
    fit_range: tuple[int, int]
    verify_range: tuple[int, int]


def _log_coeff_norm(model: Model, family: str, n: int, x) -> float:
    y = model.to_modal(x)
    log_c, unit = modal_coeff_log(model, family, [n], y)
    if isinstance(model, (DiagonalGroup, DiagonalCosine)):
        return LogVector(log_c[0], unit[0]).norm_log(2.0)
    top = float(np.max(log_c[0]))
    return top + math.log(model.norm(model.from_modal(np.exp(log_c[0] - top) * unit[0])))


def _log_generator_power_norm(model: Model, x, power: int, family: str) -> float:
    """log ‖A^power x‖ with A the group generator (group) or cosine generator."""
    y = model.to_modal(x)
    w = model.omega
    exponent = power if family == "group" else 2 * power
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mag = np.log(np.abs(y)) + (exponent * np.log(w) if exponent else 0.0)
    top = float(np.max(log_mag))
    return top + math.log(model.norm(model.from_modal(np.exp(log_mag - top))))


def lemma33_check(
    model: Model,
    x,
    p: int,
    n_range: tuple[int, int] = (None, 120),
    family: str = "group",
    fit_span: int = 30,
) -> BoundCheck:
    """Coefficient decay bounds for x in D(A^p).

    group:  ‖c_n‖ ≤ C √((n−p)!) / (2^{(n+p)/2} n!) ‖A^p x‖
    cosine: ‖c_n‖ ≤ C √((2n−2p)!) / (2^{n+p} (2n)!) ‖A^p x‖
    sine:   ‖c_n‖ ≤ C √((2n−2p)!) / (2^{n+p+1} (2n+1)!) ‖A^{p+1} x‖
    C is the largest ratio on [p, p + fit_span]; the check passes when the
    remaining range up to n_range[1] stays below it.
    """
    x = _as_state(x, model.dim)
    lo = p if n_range[0] is None else int(n_range[0])
    hi = int(n_range[1])
    if lo < p or hi <= lo + fit_span:
        raise ValueError("need p <= n_lo and a verification range beyond the fit span")
    a_power = p + 1 if family == "sine" else p
    log_apx = _log_generator_power_norm(model, x, a_power, family)
    ratios = []
    for n in range(lo, hi + 1):
        if family == "group":
            log_b = 0.5 * log_factorial(n - p) - 0.5 * (n + p) * LOG2 - log_factorial(n)
        elif family == "cosine":
            log_b = 0.5 * log_factorial(2 * n - 2 * p) - (n + p) * LOG2 - log_factorial(2 * n)
        else:
            log_b = 0.5 * log_factorial(2 * n - 2 * p) - (n + p + 1) * LOG2 - log_factorial(2 * n + 1)
        ratios.append(_log_coeff_norm(model, family, n, x) - log_b - log_apx)
    ratios = np.array(ratios)
    split = fit_span + 1
    log_C = float(np.max(ratios[:split]))
    worst = float(np.max(ratios[split:]))
    return BoundCheck(
        C=math.exp(log_C),
        holds=worst <= log_C + 1e-12,
        worst_verify_ratio=math.exp(worst - log_C),
        fit_range=(lo, lo + fit_span),
        verify_range=(lo + fit_span, hi),
    )


def cosine_sharpness_ratios(n_values: Sequence[int], K: int = 64) -> np.ndarray:
    """max_{k≤K} k^{2n} e^{−k²/4} divided by (4n/e)^n, for each n."""
    k = np.arange(1, K + 1, dtype=float)
    out = []
    for n in n_values:
        log_sup = float(np.max(2 * n * np.log(k) - k * k / 4.0))
        out.append(math.exp(log_sup - n * (math.log(4.0 * n) - 1.0)))
    return np.array(out)


__all__ = [
    "BoundCheck",
    "ErrorCurve",
    "RateFit",
    "cosine_partial",
    "cosine_sharpness_ratios",
    "error_curve",
    "fejer_exact_diagonal",
    "fejer_expansion",
    "fejer_term_norms",
    "group_partial",
    "hermite_degree",
    "holo_series",
    "laguerre_partial",
    "laguerre_values",
    "lemma33_check",
    "partial_from_coefficients",
    "partial_sums",
    "rate_fit",
    "sine_partial",
]
