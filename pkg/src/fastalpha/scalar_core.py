"""Scalar multiply of an 8-bit component by an 8-bit alpha, rounded.

Every function here returns ``round(alpha * c / 255)`` (or, for
:func:`approx_mult_8000`, a near miss of it).  The fast formulas use only
integer multiplies, adds and shifts.  They are written with plain operators
so they accept Python ints as well as unsigned NumPy integer arrays; with
arrays every intermediate fits comfortably in ``uint32``.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "CHANNEL_MAX",
    "MismatchRecord",
    "channel",
    "exact_mult_float",
    "exact_mult_int",
    "fast_mult_24",
    "fast_mult_16",
    "approx_mult_8000",
    "mismatch_census",
]

CHANNEL_MAX = 255

MultFn = Callable[[int, int], int]


def channel(value) -> int:
    """Validate an 8-bit component value and return it as an ``int``.

    This is the only place range checking happens; the arithmetic below
    assumes its inputs are already valid.
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"channel value must be an integer, got {type(value).__name__}")
    value = int(value)
    if not 0 <= value <= CHANNEL_MAX:
        raise ValueError(f"channel value {value} outside 0..255")
    return value


class MismatchRecord(NamedTuple):
    """One (alpha, c) pair on which a candidate formula missed the oracle."""

    alpha: int
    channel: int
    got: int
    want: int


def exact_mult_float(alpha, c):
    """Reference result via double-precision division and +0.5 truncation."""
    q = (alpha * c) / 255.0 + 0.5
    if isinstance(q, np.ndarray):
        return q.astype(np.uint32)
    return int(q)


def exact_mult_int(alpha, c):
    """Reference result via integer division, rounding constant 127."""
    return (alpha * c + 127) // 255


def fast_mult_24(alpha, c):
    """``(alpha * 257 * c + 0x8080) >> 16``; needs a 25-bit intermediate."""
    alpha = alpha | (alpha << 8)
    t = c * alpha
    t = t + 0x8080
    return t >> 16


def fast_mult_16(alpha, c):
    """Blinn's 16-bit form: ``t = alpha*c + 0x80; (t + (t >> 8)) >> 8``."""
    t = alpha * c + 0x80
    t = t + (t >> 8)
    return t >> 8


def approx_mult_8000(alpha, c):
    """Truncated-series formula with rounding constant 0x8000.

    Kept deliberately inexact: it comes out one low on 24 of the 65,536
    input pairs.
    """
    alpha = alpha | (alpha << 8)
    return (c * alpha + 0x8000) >> 16


def mismatch_census(candidate: MultFn, oracle: MultFn) -> list[MismatchRecord]:
    """Compare two component multiplies over every (alpha, c) pair.

    Pairs are visited alpha-major, both ascending, and every disagreement is
    returned in that order.
    """
    out = []
    for alpha in range(256):
        for c in range(256):
            got = candidate(alpha, c)
            want = oracle(alpha, c)
            if got != want:
                out.append(MismatchRecord(alpha, c, int(got), int(want)))
    return out
