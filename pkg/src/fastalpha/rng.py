"""Seeded pixel streams from SplitMix64.

SplitMix64 is used instead of NumPy's generators because it is a few lines
in any language. Output ``i`` (counting from 0) for seed ``s`` is::

    z = s + (i + 1) * 0x9E3779B97F4A7C15            (mod 2**64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

and pixel ``i`` is the upper 32 bits of that output.
"""

from __future__ import annotations

import numpy as np

__all__ = ["splitmix64", "random_pixels", "random_premultiplied"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def splitmix64(n: int, seed: int = 0, start: int = 0) -> np.ndarray:
    """Outputs ``start .. start+n-1`` of the SplitMix64 stream for ``seed``."""
    idx = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed % (1 << 64)) + idx * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def random_pixels(n: int, seed: int = 0, start: int = 0) -> np.ndarray:
    return (splitmix64(n, seed, start) >> np.uint64(32)).astype(np.uint32)


def random_premultiplied(n: int, seed: int = 0, start: int = 0) -> np.ndarray:
    """Random pixels pushed through the exact premultiply, so always valid."""
    from .swar_blend import premultiply_pixel

    return premultiply_pixel(random_pixels(n, seed, start))
