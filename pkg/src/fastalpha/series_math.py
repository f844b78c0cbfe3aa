"""Division by 255 as a truncated base-256 geometric series.

``y / 255 = y * (2**-8 + 2**-16 + 2**-24 + ...)``.  Keeping ``k`` terms gives
``y * (256**k - 1) / 255`` scaled by ``2**(8*k)``, which is always an exact
integer; what is thrown away is exactly ``y / (255 * 2**(8*k))``.
All quantities are exact integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar_core import fast_mult_24

__all__ = [
    "WIDE_BITS",
    "SeriesExpansion",
    "repeating_digits",
    "series_div255",
    "series_matches_fast_formula",
    "geometric_partial_sum",
]

# y * 256**k must stay below 2**WIDE_BITS
WIDE_BITS = 128


@dataclass(frozen=True)
class SeriesExpansion:
    y: int
    terms: int
    scaled_value: int
    tail_bound_num: int
    tail_bound_den: int

    @property
    def scale(self) -> int:
        return 1 << (8 * self.terms)

    @property
    def value(self) -> Fraction:
        """The truncated partial sum as an exact rational."""
        return Fraction(self.scaled_value, self.scale)

    @property
    def tail(self) -> Fraction:
        return Fraction(self.tail_bound_num, self.tail_bound_den)


def repeating_digits(c: int, count: int) -> list[int]:
    """First ``count`` base-256 fractional digits of ``c / 255``.

    Read off the exact integer ``c * (256**count - 1) / 255``, so 255 gives
    the digit 0xff rather than carrying into a whole 1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 <= c <= 255:
        raise ValueError(f"c={c} outside 0..255")
    scaled = c * ((1 << (8 * count)) - 1) // 255
    return list(scaled.to_bytes(count, "big"))


def series_div255(y: int, terms: int) -> SeriesExpansion:
    """Truncate the series for ``y / 255`` after ``terms`` multiples of 2**-8.

    ``y`` may be any non-negative integer as long as ``y * 256**terms`` fits
    in :data:`WIDE_BITS` bits; larger requests raise :class:`OverflowError`.
    """
    if y < 0:
        raise ValueError("y must be non-negative")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    shift = 8 * terms
    if (y << shift) >> WIDE_BITS:
        raise OverflowError(
            f"y * 256**{terms} exceeds the {WIDE_BITS}-bit budget"
        )
    # shift-and-add: one copy of y per retained term
    scaled = 0
    for _ in range(terms):
        scaled = (scaled << 8) + y
    return SeriesExpansion(
        y=y,
        terms=terms,
        scaled_value=scaled,
        tail_bound_num=y,
        tail_bound_den=255 << shift,
    )


def series_matches_fast_formula(alpha: int, c: int) -> bool:
    """True when the two-term series reproduces :func:`fast_mult_24`."""
    s = series_div255(alpha, 2)
    return (s.scaled_value * c + 0x8080) >> 16 == fast_mult_24(alpha, c)


def geometric_partial_sum(x: Fraction, terms: int) -> Fraction:
    """``1 + x + ... + x**(terms-1)``, the start of ``1 / (1 - x)``."""
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(terms):
        total += power
        power *= x
    return total
