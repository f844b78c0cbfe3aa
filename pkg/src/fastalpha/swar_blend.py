"""Packed (SWAR) alpha multiplies on RGBA32 pixels.

Pixel layout: red in bits 0-7, green 8-15, blue 16-23, alpha 24-31.

The pixel functions take either a Python ``int`` or a NumPy array of
``uint32`` pixels and return the same kind.  Two 8-bit components are spread
into 16-bit lanes of one 32-bit word (or four into a 64-bit word) and pushed
through ``t = a*c + 0x80; (t + (t >> 8)) >> 8`` together.  Each lane peaks at
0xff7f, so nothing ever carries into the neighbouring lane.
"""

from __future__ import annotations

import numpy as np

from .pixelio import DimensionMismatchError, PixelBuffer

__all__ = [
    "NotPremultipliedError",
    "pack_rgba",
    "unpack_rgba",
    "alpha_of",
    "premultiply_pixel",
    "premultiply_pixel_w64",
    "premultiply_pixel_oracle",
    "pixel_mul",
    "is_premultiplied",
    "over_premul",
    "over_premul_checked",
    "premultiply_buffer",
    "over_buffer",
]

LANES_32 = 0x00FF00FF
ROUND_32 = 0x00800080
HIGH_32 = 0xFF00FF00
LANES_64 = 0x00FF00FF00FF00FF
ROUND_64 = 0x0080008000800080


class NotPremultipliedError(ValueError):
    """A pixel has a color lane larger than its alpha lane."""


def _u32(p):
    if isinstance(p, np.ndarray):
        if p.dtype != np.uint32:
            p = p.astype(np.uint32)
        return p
    return int(p)


def pack_rgba(r, g, b, a):
    return (a << 24) | (b << 16) | (g << 8) | r


def unpack_rgba(p):
    """Return ``(r, g, b, a)`` lanes of a pixel (or pixel array)."""
    return p & 0xFF, (p >> 8) & 0xFF, (p >> 16) & 0xFF, (p >> 24) & 0xFF


def alpha_of(p):
    return p >> 24


def _mul_pair(pair, a):
    # pair holds two components at bits 0 and 16; result lands in bits 8 and 24
    pair = pair * a
    pair = pair + ROUND_32
    pair = pair + ((pair >> 8) & LANES_32)
    return pair & HIGH_32


def _specials(p, alfa, out):
    # alpha 0 gives the zero pixel, alpha 255 leaves p alone
    if isinstance(out, np.ndarray):
        out = np.where(alfa == 0, np.uint32(0), out)
        return np.where(alfa == 255, p, out).astype(np.uint32)
    if alfa == 0:
        return 0
    if alfa == 255:
        return p
    return out


def premultiply_pixel(p, shortcut: bool = False):
    """Multiply the color lanes of ``p`` by its own alpha (two multiplies).

    The alpha field is forced to 255 first so its lane comes back unchanged.
    ``shortcut`` enables the alpha 0/255 early exits; results are identical.
    """
    color = _u32(p)
    alfa = color >> 24
    color = color | 0xFF000000
    rb = _mul_pair(color & LANES_32, alfa)
    ga = _mul_pair((color >> 8) & LANES_32, alfa)
    out = ga | (rb >> 8)
    if shortcut:
        return _specials(_u32(p), alfa, out)
    return out


def pixel_mul(p, a):
    """Multiply all four lanes of ``p``, alpha included, by ``a``.

    This is the matte form: ``p`` is usually already premultiplied.
    """
    x = _u32(p)
    a = _u32(a)
    rb = _mul_pair(x & LANES_32, a)
    ga = _mul_pair((x >> 8) & LANES_32, a)
    return ga | (rb >> 8)


def _spread64(x):
    # byte n of the pixel moves to bit 16n
    return (x & 0xFF) | ((x & 0xFF00) << 8) | ((x & 0xFF0000) << 16) | ((x & 0xFF000000) << 24)


def _gather64(q):
    # inverse of _spread64
    return (q & 0xFF) | ((q >> 8) & 0xFF00) | ((q >> 16) & 0xFF0000) | ((q >> 24) & 0xFF000000)


def premultiply_pixel_w64(p, shortcut: bool = False):
    """Same result as :func:`premultiply_pixel` using one 64-bit multiply."""
    color = _u32(p)
    alfa = color >> 24
    if isinstance(color, np.ndarray):
        wide = (color | 0xFF000000).astype(np.uint64)
        alfa64 = alfa.astype(np.uint64)
    else:
        wide = color | 0xFF000000
        alfa64 = alfa
    q = _spread64(wide)
    q = q * alfa64
    q = q + ROUND_64
    q = q + ((q >> 8) & LANES_64)
    out = _gather64((q >> 8) & LANES_64)
    if isinstance(out, np.ndarray):
        out = out.astype(np.uint32)
    if shortcut:
        return _specials(color, alfa, out)
    return out


def premultiply_pixel_oracle(p):
    """Per-lane floating-point premultiply, ``int(alpha * c / 255.0 + 0.5)``."""
    color = _u32(p)
    r, g, b, a = unpack_rgba(color)
    if isinstance(color, np.ndarray):
        af = a.astype(np.float64)

        def scale(c):
            return (af * c / 255.0 + 0.5).astype(np.uint32)
    else:

        def scale(c):
            return int((a * c) / 255.0 + 0.5)

    return pack_rgba(scale(r), scale(g), scale(b), a)


def is_premultiplied(p):
    r, g, b, a = unpack_rgba(_u32(p))
    return (r <= a) & (g <= a) & (b <= a)


def over_premul(src, dst):
    """Premultiplied source-over: ``src + dst * (255 - alpha(src)) / 255``.

    Inputs must already be premultiplied.  Per-lane sums then cannot pass 255,
    so a single unclamped 32-bit add is enough; the debug assertion checks it.
    """
    s = _u32(src)
    d = pixel_mul(dst, 255 - (s >> 24))
    if __debug__:
        lo = (s & LANES_32) + (d & LANES_32)
        hi = ((s >> 8) & LANES_32) + ((d >> 8) & LANES_32)
        assert not np.any((lo | hi) & HIGH_32), "over_premul lane overflow"
    return s + d


def over_premul_checked(src, dst):
    """:func:`over_premul` that first rejects non-premultiplied inputs."""
    for name, p in (("src", src), ("dst", dst)):
        ok = is_premultiplied(p)
        if not np.all(ok):
            if isinstance(ok, np.ndarray):
                i = int(np.flatnonzero(~ok)[0])
                raise NotPremultipliedError(
                    f"{name} pixel {i} (0x{int(np.asarray(p)[i]):08X}) is not premultiplied"
                )
            raise NotPremultipliedError(f"{name} pixel 0x{int(p):08X} is not premultiplied")
    return over_premul(src, dst)


def _chunks(n, chunk):
    step = n if not chunk else chunk
    for start in range(0, n, max(step, 1)):
        yield slice(start, min(start + step, n))


def premultiply_buffer(buf: PixelBuffer, *, w64: bool = False, shortcut: bool = False,
                       chunk: int | None = None) -> PixelBuffer:
    """Premultiply every pixel of ``buf`` in place and return it.

    ``chunk`` (pixels per slice) only changes how the work is split up.
    """
    fn = premultiply_pixel_w64 if w64 else premultiply_pixel
    px = buf.pixels
    for sl in _chunks(px.size, chunk):
        px[sl] = fn(px[sl], shortcut=shortcut)
    return buf


def over_buffer(src: PixelBuffer, dst: PixelBuffer, *, checked: bool = False,
                chunk: int | None = None) -> PixelBuffer:
    """Composite ``src`` over ``dst`` in place; both must be premultiplied."""
    if (src.width, src.height) != (dst.width, dst.height):
        raise DimensionMismatchError(
            f"source is {src.width}x{src.height} but destination is {dst.width}x{dst.height}"
        )
    s, d = src.pixels, dst.pixels
    if checked:
        # validate everything up front so a bad pixel leaves dst untouched
        for name, px in (("src", s), ("dst", d)):
            bad = np.flatnonzero(~is_premultiplied(px))
            if bad.size:
                i = int(bad[0])
                raise NotPremultipliedError(
                    f"{name} pixel {i} (0x{int(px[i]):08X}) is not premultiplied"
                )
    for sl in _chunks(d.size, chunk):
        d[sl] = over_premul(s[sl], d[sl])
    return dst
