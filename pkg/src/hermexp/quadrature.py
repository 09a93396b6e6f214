"""Gauss-Hermite rules, Hermite coefficient extraction and L^p errors on the line."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .hermite_core import (
    DEGREE_CAP,
    QuadratureError,
    _gauss_legendre,
    hermite_zeros,
    iter_scaled_ortho,
)
from .signedlog import log_hermite_norm, neumaier_sum

#: Extra rule size required beyond the extracted degree.
ACCURACY_MARGIN = 32


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight e^{-t^2}.

    ``log_scaled_weights`` holds log(w_i e^{x_i^2}); the raw ``weights``
    underflow to zero at the outermost nodes of very large rules.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_scaled_weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size


@lru_cache(maxsize=32)
def gauss_hermite_rule(size: int) -> QuadratureRule:
    if int(size) != size or not 1 <= size <= DEGREE_CAP:
        raise ValueError(f"rule size must be an integer in [1, {DEGREE_CAP}], got {size}")
    size = int(size)
    x = hermite_zeros(size)
    if x.size != size or not np.all(np.isfinite(x)) or np.any(np.diff(x) <= 0):
        raise RuntimeError(f"eigenvalue solver returned an invalid node set for size {size}")
    # w_i = 1 / (size * (ℋ_{size-1}(x_i) e^{x_i^2/2})^2), formed in log domain
    for k, mant, scale in iter_scaled_ortho(x, size - 1):
        if k == size - 1:
            log_m = np.log(np.abs(mant)) + scale
    log_w = -math.log(size) - 2.0 * log_m
    log_w = 0.5 * (log_w + log_w[::-1])
    weights = np.exp(log_w)
    log_sw = log_w + x * x
    for arr in (x, weights, log_sw):
        arr.setflags(write=False)
    return QuadratureRule(x, weights, log_sw)


def rule_size_for_degree(n: int) -> int:
    """Default rule size max(2n+64, 64) for extracting the degree-n coefficient."""
    return max(2 * n + 64, 64)


def _evaluate_on_nodes(F: Callable, nodes: np.ndarray) -> np.ndarray:
    vals = np.array([np.asarray(F(float(x))) for x in nodes])
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand returned a non-finite value at a quadrature node")
    return vals


def _node_factors(rule: QuadratureRule, degrees, normalized: bool = True) -> dict[int, np.ndarray]:
    """w_i e^{x_i^2/2} ℋ_n(x_i) / sqrt(2^n n! sqrt(pi)) for each requested n.

    With ``normalized=False`` the division by sqrt(2^n n! sqrt(pi)) is skipped.
    """
    wanted = set(int(n) for n in degrees)
    top = max(wanted)
    x = rule.nodes
    out = {}
    with np.errstate(divide="ignore"):
        for n, mant, scale in iter_scaled_ortho(x, top):
            if n in wanted:
                log_f = rule.log_scaled_weights - x * x + np.log(np.abs(mant)) + scale
                if normalized:
                    log_f = log_f - 0.5 * log_hermite_norm(n)
                out[n] = np.sign(mant) * np.exp(log_f)
    return out


def _check_rule_for(n: int, rule: QuadratureRule) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if rule.size < n + ACCURACY_MARGIN:
        raise ValueError(
            f"rule of size {rule.size} is too small for degree {n}; need at least {n + ACCURACY_MARGIN}"
        )


def coeffs_by_quadrature(F: Callable, degrees, rule: QuadratureRule) -> dict[int, np.ndarray]:
    """c_n(F) = ∫ h_n(t) F(t) dt for several degrees, evaluating F once per node."""
    degrees = [int(n) for n in degrees]
    for n in degrees:
        _check_rule_for(n, rule)
    vals = _evaluate_on_nodes(F, rule.nodes)
    factors = _node_factors(rule, degrees)
    shape = (-1,) + (1,) * (vals.ndim - 1)
    return {n: neumaier_sum(factors[n].reshape(shape) * vals, axis=0) for n in degrees}


def coeff_by_quadrature(F: Callable, n: int, rule: QuadratureRule | None = None):
    """c_n(F) = ∫ h_n(t) F(t) dt for a scalar- or vector-valued F."""
    if rule is None:
        rule = gauss_hermite_rule(rule_size_for_degree(n))
    return coeffs_by_quadrature(F, [n], rule)[n]


def _tail_norm(f, g, p, L, span=8.0):
    s = np.linspace(L, L + span, 161)
    s = np.concatenate([-s, s])
    return (span * float(np.max(np.abs(f(s) - g(s)) ** p))) ** (1.0 / p)


def _sign_change_breaks(f, g, L, spacing=0.01, max_roots=5000, iterations=48) -> np.ndarray:
    """[-L, roots of a real-valued f - g, L]; |f - g|^p has kinks at the roots.

    Roots are bracketed on a probe grid and refined by vectorized bisection.
    Differences at roundoff level are left alone since their kinks cannot
    affect the result above the absolute tolerance.
    """
    probe = np.linspace(-L, L, int(math.ceil(2 * L / spacing)) + 1)
    fv = np.asarray(f(probe))
    d = fv - np.asarray(g(probe))
    ends = np.array([-L, L])
    if np.iscomplexobj(d) and np.any(d.imag != 0):
        return ends
    d = d.real
    if np.max(np.abs(d)) <= 1e-13 * max(float(np.max(np.abs(fv))), 1e-300):
        return ends
    idx = np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]
    if idx.size == 0 or idx.size > max_roots:
        return ends
    lo, hi = probe[idx], probe[idx + 1]
    s_lo = np.sign(d[idx])
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        s_mid = np.sign(np.real(np.asarray(f(mid)) - np.asarray(g(mid))))
        left = s_mid == s_lo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return np.concatenate([[-L], 0.5 * (lo + hi), [L]])


def lp_error_on_line(
    f: Callable,
    g: Callable,
    p: float,
    L: float | None = None,
    rtol: float = 1e-10,
    atol: float = 1e-15,
    tail_tol: float = 1e-13,
    nodes: int = 20,
    panel: float = 0.5,
    max_halvings: int = 6,
) -> float:
    """‖f − g‖_p on the real line by composite Gauss-Legendre on [−L, L].

    ``f`` and ``g`` must accept numpy arrays.  When ``L`` is not given it grows
    until the sampled tail beyond it contributes less than ``tail_tol`` to the
    norm.  Sign changes of a real-valued difference become panel breakpoints,
    and panels are halved until successive norm estimates agree.
    """
    p = float(p)
    if not (1.0 <= p < math.inf):
        raise ValueError("p must lie in [1, inf)")
    if L is None:
        L = 6.0
        while _tail_norm(f, g, p, L) >= tail_tol:
            L += 2.0
            if L > 60.0:
                raise QuadratureError("integrand does not decay on the line", _tail_norm(f, g, p, L))
    x, w = _gauss_legendre(nodes)
    breaks = _sign_change_breaks(f, g, L)

    def estimate(width):
        edges = [breaks[:1]]
        for a, b in zip(breaks[:-1], breaks[1:]):
            count = max(1, int(math.ceil((b - a) / width)))
            edges.append(np.linspace(a, b, count + 1)[1:])
        edges = np.concatenate(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
        half = 0.5 * (edges[1:] - edges[:-1])[:, None]
        t = mid + half * x
        vals = np.abs(f(t) - g(t)) ** p
        return float(np.sum(half * w * vals)) ** (1.0 / p)

    prev = estimate(panel)
    for k in range(1, max_halvings + 1):
        cur = estimate(panel / 2**k)
        if abs(cur - prev) <= max(rtol * cur, atol):
            return cur
        prev = cur
    raise QuadratureError("composite quadrature did not settle", abs(cur - prev))


__all__ = [
    "ACCURACY_MARGIN",
    "QuadratureRule",
    "coeff_by_quadrature",
    "coeffs_by_quadrature",
    "gauss_hermite_rule",
    "lp_error_on_line",
    "rule_size_for_degree",
]
