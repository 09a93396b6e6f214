"""Sign/log-magnitude numbers, log-factorials and compensated summation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

NEG_INF = -math.inf
# Largest log-magnitude whose exponential is a finite double.
LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(logmag)``."""

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if math.isnan(self.logmag) or self.logmag == math.inf:
            raise ValueError(f"invalid log-magnitude {self.logmag}")
        if (self.sign == 0) != (self.logmag == NEG_INF):
            raise ValueError("sign is 0 exactly when logmag is -inf")

    @classmethod
    def from_float(cls, x: float) -> "SignedLogValue":
        if not math.isfinite(x):
            raise ValueError(f"cannot represent non-finite value {x}")
        if x == 0.0:
            return cls(0, NEG_INF)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        """Convert to a float, raising ``OverflowError`` instead of returning inf."""
        if self.sign == 0:
            return 0.0
        if self.logmag > LOG_MAX:
            raise OverflowError(f"exp({self.logmag:.6g}) is not representable")
        return self.sign * math.exp(self.logmag)

    __float__ = to_float

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return ZERO
        return SignedLogValue(self.sign * other.sign, self.logmag + other.logmag)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogValue")
        if self.sign == 0:
            return ZERO
        return SignedLogValue(self.sign * other.sign, self.logmag - other.logmag)

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.logmag)

    def scale_log(self, c: float) -> "SignedLogValue":
        """Multiply by ``exp(c)``."""
        if self.sign == 0:
            return ZERO
        return SignedLogValue(self.sign, self.logmag + c)


ZERO = SignedLogValue(0, NEG_INF)


def signed_log(x) -> tuple[np.ndarray, np.ndarray]:
    """Split a real array into (sign, log|x|) with log(0) = -inf."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.sign(x), np.log(np.abs(x))


def exp_checked(logmag) -> np.ndarray:
    """``exp`` that raises ``OverflowError`` rather than producing inf."""
    logmag = np.asarray(logmag, dtype=float)
    if np.any(logmag > LOG_MAX):
        raise OverflowError(f"log-magnitude {np.max(logmag):.6g} exceeds the float range")
    return np.exp(logmag)


_FACTORIAL_TABLE_SIZE = 2 * 4096 + 2


@lru_cache(maxsize=1)
def _log_factorial_table() -> np.ndarray:
    table = gammaln(np.arange(_FACTORIAL_TABLE_SIZE, dtype=float) + 1.0)
    table.setflags(write=False)
    return table


def log_factorial(n):
    """log(n!) for integer n >= 0 (scalar or array)."""
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise ValueError("log_factorial needs n >= 0")
    table = _log_factorial_table()
    if np.all(n_arr < _FACTORIAL_TABLE_SIZE):
        out = table[n_arr.astype(np.int64)]
    else:
        out = gammaln(n_arr.astype(float) + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def log_hermite_norm(n):
    """log of 2^n n! sqrt(pi), the squared L2 norm of H_n for the weight e^{-t^2}."""
    n_arr = np.asarray(n)
    out = n_arr * math.log(2.0) + log_factorial(n_arr) + 0.5 * math.log(math.pi)
    return float(out) if np.ndim(out) == 0 else out


def neumaier_sum(terms, axis: int = 0):
    """Compensated (Neumaier) sum along ``axis`` in a fixed sequential order.

    Complex input is summed with independent real and imaginary compensation.
    """
    a = np.asarray(terms)
    if np.iscomplexobj(a):
        return neumaier_sum(a.real, axis) + 1j * neumaier_sum(a.imag, axis)
    a = np.moveaxis(a.astype(float, copy=False), axis, 0)
    total = np.zeros(a.shape[1:])
    comp = np.zeros(a.shape[1:])
    for x in a:
        t = total + x
        comp += np.where(np.abs(total) >= np.abs(x), (total - t) + x, (x - t) + total)
        total = t
    return total + comp


def neumaier_cumsum(terms, checkpoints, axis: int = 0):
    """Compensated partial sums of ``terms[:k+1]`` for each k in ``checkpoints``.

    Every snapshot uses the same sequential order as ``neumaier_sum`` so a
    snapshot at k equals ``neumaier_sum(terms[:k+1])`` bit for bit.
    """
    a = np.asarray(terms)
    if np.iscomplexobj(a):
        re = neumaier_cumsum(a.real, checkpoints, axis)
        im = neumaier_cumsum(a.imag, checkpoints, axis)
        return [r + 1j * i for r, i in zip(re, im)]
    a = np.moveaxis(a.astype(float, copy=False), axis, 0)
    wanted = sorted(set(int(k) for k in checkpoints))
    if wanted and (wanted[0] < 0 or wanted[-1] >= a.shape[0]):
        raise ValueError("checkpoint outside the term range")
    wanted_set = set(wanted)
    snapshots = {}
    total = np.zeros(a.shape[1:])
    comp = np.zeros(a.shape[1:])
    for k, x in enumerate(a[: (wanted[-1] + 1) if wanted else 0]):
        t = total + x
        comp += np.where(np.abs(total) >= np.abs(x), (total - t) + x, (x - t) + total)
        total = t
        if k in wanted_set:
            snapshots[k] = total + comp
    return [snapshots[int(k)] for k in checkpoints]


@dataclass(frozen=True)
class LogVector:
    """Vector stored as ``exp(logmag) * unit`` with ``|unit| = 1`` (or 0 for zero entries).

    The unit factor carries sign or complex phase; the magnitude never leaves
    the log domain until ``to_array`` is called.
    """

    logmag: np.ndarray
    unit: np.ndarray

    @classmethod
    def from_array(cls, v) -> "LogVector":
        v = np.asarray(v, dtype=complex)
        mag = np.abs(v)
        with np.errstate(divide="ignore", invalid="ignore"):
            logmag = np.log(mag)
            unit = np.where(mag > 0, v / np.where(mag > 0, mag, 1.0), 0.0)
        return cls(logmag, unit.astype(complex))

    def to_array(self) -> np.ndarray:
        """Linearize; entries below the float range underflow to zero."""
        return exp_checked(self.logmag) * self.unit

    def scale_log(self, c) -> "LogVector":
        return LogVector(self.logmag + c, self.unit)

    def max_logmag(self) -> float:
        return float(np.max(self.logmag)) if self.logmag.size else NEG_INF

    def norm_log(self, p: float = 2.0) -> float:
        """log of the l^p norm, computed without leaving the log domain."""
        lm = self.logmag
        top = self.max_logmag()
        if top == NEG_INF:
            return NEG_INF
        if math.isinf(p):
            return top
        return top + math.log(np.sum(np.exp(p * (lm - top)))) / p
