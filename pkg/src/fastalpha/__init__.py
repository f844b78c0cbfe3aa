"""Exact, division-free 8-bit alpha multiplication and premultiplied blending."""

from .pixelio import PixelBuffer, load, read_pam, read_raw, save, write_pam, write_raw
from .scalar_core import (
    MismatchRecord,
    approx_mult_8000,
    channel,
    exact_mult_float,
    exact_mult_int,
    fast_mult_16,
    fast_mult_24,
    mismatch_census,
)
from .series_math import SeriesExpansion, repeating_digits, series_div255, series_matches_fast_formula
from .swar_blend import (
    over_buffer,
    over_premul,
    over_premul_checked,
    pack_rgba,
    pixel_mul,
    premultiply_buffer,
    premultiply_pixel,
    premultiply_pixel_oracle,
    premultiply_pixel_w64,
    unpack_rgba,
)

__version__ = "0.1.0"
