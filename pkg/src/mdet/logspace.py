"""Log-space arithmetic helpers.

Everything downstream stores magnitudes as natural logs so that quantities
like e^800 (lognormal raw moments) or (n log n)^n (recursion bounds) stay
representable.  Subtraction of large same-sign quantities goes through the
signed-log type to dodge catastrophic cancellation.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

LOG_ZERO = -math.inf


def log1mexp(x: float) -> float:
    """log(1 - exp(x)) for x < 0, stable near both ends."""
    if x >= 0.0:
        raise ValueError("log1mexp requires x < 0")
    if x > -math.log(2.0):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def log_add(a: float, b: float) -> float:
    return float(np.logaddexp(a, b))


def log_sub(a: float, b: float) -> float:
    """log(exp(a) - exp(b)); requires a >= b."""
    if b == LOG_ZERO:
        return a
    if b > a:
        raise ValueError(f"log_sub: negative result (a={a}, b={b})")
    if a == b:
        return LOG_ZERO
    return a + log1mexp(b - a)


def log_sum(values) -> float:
    """log(sum(exp(values))) over an array, peak-shifted."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return LOG_ZERO
    return float(logsumexp(arr))


class SignedLog(NamedTuple):
    """A real number as (sign, log|value|); sign 0 encodes exact zero."""

    sign: int
    log_abs: float

    @classmethod
    def from_float(cls, x: float) -> "SignedLog":
        if x == 0.0:
            return cls(0, LOG_ZERO)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> "SignedLog":
        if log_abs == LOG_ZERO:
            return cls(0, LOG_ZERO)
        return cls(sign, log_abs)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)


def signed_sub(a: SignedLog, b: SignedLog) -> SignedLog:
    """a - b in signed log space."""
    return signed_add(a, SignedLog(-b.sign, b.log_abs))


def signed_add(a: SignedLog, b: SignedLog) -> SignedLog:
    if a.sign == 0:
        return b
    if b.sign == 0:
        return a
    if a.sign == b.sign:
        return SignedLog(a.sign, log_add(a.log_abs, b.log_abs))
    # opposite signs: subtract the smaller magnitude from the larger
    if a.log_abs == b.log_abs:
        return SignedLog(0, LOG_ZERO)
    if a.log_abs > b.log_abs:
        return SignedLog(a.sign, log_sub(a.log_abs, b.log_abs))
    return SignedLog(b.sign, log_sub(b.log_abs, a.log_abs))


def signed_le(a: SignedLog, b: SignedLog, log_tol: float = -math.inf) -> bool:
    """a <= b, with an optional additive slack exp(log_tol) on b's side."""
    diff = signed_sub(b, a)
    if diff.sign >= 0:
        return True
    return diff.log_abs <= log_tol
