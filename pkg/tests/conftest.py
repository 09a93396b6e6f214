"""Independent oracles shared by the test modules.

Hermite polynomials are rebuilt here from integer coefficients and evaluated
in exact rational arithmetic, then scaled with 50-digit mpmath.  Nothing in
this file imports the package under test.
"""

from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np
import pytest

mp.mp.dps = 50


@lru_cache(maxsize=None)
def hermite_int_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of H_n, lowest degree first, from H_{k+1} = 2tH_k − 2kH_{k−1}."""
    prev, cur = [1], [0, 2]
    if n == 0:
        return tuple(prev)
    for k in range(1, n):
        nxt = [0] * (k + 2)
        for j, c in enumerate(cur):
            nxt[j + 1] += 2 * c
        for j, c in enumerate(prev):
            nxt[j] -= 2 * k * c
        prev, cur = cur, nxt
    return tuple(cur)


def hermite_exact(n: int, t) -> Fraction:
    t = Fraction(t)
    acc = Fraction(0)
    for c in reversed(hermite_int_coeffs(n)):
        acc = acc * t + c
    return acc


def hermite_mp(n: int, t) -> mp.mpf:
    h = hermite_exact(n, t)
    return mp.mpf(h.numerator) / h.denominator


def norm_mp(n: int) -> mp.mpf:
    return mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi)


def ortho_mp(n: int, t) -> mp.mpf:
    """ℋ_n(t) = H_n(t) e^{−t²/2} / √(2^n n! √π)."""
    t_mp = mp.mpf(Fraction(t).numerator) / Fraction(t).denominator
    return hermite_mp(n, t) * mp.exp(-t_mp**2 / 2) / mp.sqrt(norm_mp(n))


def kernel_mp(n: int, t) -> mp.mpf:
    """h_n(t) = e^{−t²} H_n(t) / (2^n n! √π)."""
    t_mp = mp.mpf(Fraction(t).numerator) / Fraction(t).denominator
    return hermite_mp(n, t) * mp.exp(-t_mp**2) / norm_mp(n)


def rel_close(a, b, rtol):
    a, b = float(a), float(b)
    return abs(a - b) <= rtol * max(abs(b), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
