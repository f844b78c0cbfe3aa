"""Pixel buffers and two lossless RGBA32 file formats.

Raw format::

    b"RGBA" | width u32 LE | height u32 LE | width*height*4 bytes (R, G, B, A)

PAM format: a ``P7`` header with ``DEPTH 4``, ``MAXVAL 255`` and ``TUPLTYPE
RGB_ALPHA``, then the binary raster in the same R, G, B, A byte order.

Either way byte ``4n`` of the payload is the red lane (bits 0-7) of pixel
``n``, so on disk the pixels are simply little-endian ``uint32`` words.
"""

from __future__ import annotations

import io
import os
import struct
import sys
from dataclasses import dataclass, field
from typing import BinaryIO, Union

import numpy as np

__all__ = [
    "PixelFormatError",
    "BadMagicError",
    "TruncatedHeaderError",
    "PayloadLengthError",
    "DimensionOverflowError",
    "MalformedHeaderError",
    "UnsupportedFormatError",
    "TruncatedRasterError",
    "DimensionMismatchError",
    "PixelBuffer",
    "read_raw",
    "write_raw",
    "read_pam",
    "write_pam",
    "detect_format",
    "load",
    "save",
]

RAW_MAGIC = b"RGBA"
PAM_MAGIC = b"P7"
_RAW_HEADER = struct.Struct("<4sII")
# largest payload we agree to allocate, in bytes
MAX_PAYLOAD = sys.maxsize

Source = Union[bytes, bytearray, memoryview, BinaryIO]


class PixelFormatError(ValueError):
    """Base class for unreadable or unsupported image data."""


class BadMagicError(PixelFormatError):
    pass


class TruncatedHeaderError(PixelFormatError):
    pass


class PayloadLengthError(PixelFormatError):
    pass


class DimensionOverflowError(PixelFormatError):
    pass


class MalformedHeaderError(PixelFormatError):
    pass


class UnsupportedFormatError(PixelFormatError):
    pass


class TruncatedRasterError(PixelFormatError):
    pass


class DimensionMismatchError(ValueError):
    """Two buffers that must share a size do not."""


def _empty_pixels():
    return np.zeros(0, dtype=np.uint32)


@dataclass(eq=False)
class PixelBuffer:
    """Row-major ``width x height`` RGBA32 image backed by a ``uint32`` array."""

    width: int
    height: int
    pixels: np.ndarray = field(default_factory=_empty_pixels)

    def __post_init__(self):
        if self.width < 0 or self.height < 0:
            raise ValueError("dimensions must be non-negative")
        self.pixels = np.ascontiguousarray(self.pixels, dtype=np.uint32).reshape(-1)
        if self.pixels.size != self.width * self.height:
            raise ValueError(
                f"{self.pixels.size} pixels given for a {self.width}x{self.height} buffer"
            )

    @classmethod
    def blank(cls, width: int, height: int) -> "PixelBuffer":
        return cls(width, height, np.zeros(width * height, dtype=np.uint32))

    def __len__(self):
        return self.pixels.size

    def __eq__(self, other):
        if not isinstance(other, PixelBuffer):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def copy(self) -> "PixelBuffer":
        return PixelBuffer(self.width, self.height, self.pixels.copy())

    def rows(self) -> np.ndarray:
        return self.pixels.reshape(self.height, self.width)

    def to_bytes(self) -> bytes:
        return self.pixels.astype("<u4", copy=False).tobytes()


def _read_all(src: Source) -> bytes:
    if isinstance(src, (bytes, bytearray, memoryview)):
        return bytes(src)
    return src.read()


def _payload_size(width, height):
    size = width * height * 4
    if size > MAX_PAYLOAD:
        raise DimensionOverflowError(f"{width}x{height} image is too large to allocate")
    return size


def _from_payload(width, height, payload):
    pixels = np.frombuffer(payload, dtype="<u4").astype(np.uint32)
    return PixelBuffer(width, height, pixels)


def read_raw(src: Source) -> PixelBuffer:
    data = _read_all(src)
    head = data[:4]
    if head != RAW_MAGIC[: len(head)]:
        raise BadMagicError(f"expected magic b'RGBA', got {head!r}")
    if len(data) < _RAW_HEADER.size:
        raise TruncatedHeaderError(
            f"raw header needs {_RAW_HEADER.size} bytes, got {len(data)}"
        )
    _, width, height = _RAW_HEADER.unpack_from(data)
    size = _payload_size(width, height)
    payload = data[_RAW_HEADER.size :]
    if len(payload) != size:
        raise PayloadLengthError(
            f"{width}x{height} image needs {size} payload bytes, found {len(payload)}"
        )
    return _from_payload(width, height, payload)


def _emit(data: bytes, fp):
    if fp is not None:
        fp.write(data)
    return data


def write_raw(buf: PixelBuffer, fp: BinaryIO | None = None) -> bytes:
    """Encode ``buf`` in the raw format; also write it to ``fp`` if given."""
    header = _RAW_HEADER.pack(RAW_MAGIC, buf.width, buf.height)
    return _emit(header + buf.to_bytes(), fp)


_PAM_REQUIRED = ("WIDTH", "HEIGHT", "DEPTH", "MAXVAL")


def _parse_pam_header(data: bytes):
    if data[:2] != PAM_MAGIC:
        raise BadMagicError(f"expected PAM magic b'P7', got {data[:2]!r}")
    if len(data) < 3 or data[2:3] not in (b"\n", b"\r", b" ", b"\t"):
        raise MalformedHeaderError("PAM magic must be followed by a newline")
    pos = 3
    fields: dict[str, str] = {}
    tupltypes = []
    while True:
        end = data.find(b"\n", pos)
        if end < 0:
            raise MalformedHeaderError("PAM header has no ENDHDR line")
        line = data[pos:end].strip()
        pos = end + 1
        if not line or line.startswith(b"#"):
            continue
        try:
            text = line.decode("ascii")
        except UnicodeDecodeError:
            raise MalformedHeaderError("PAM header is not ASCII") from None
        key, _, value = text.partition(" ")
        value = value.strip()
        if key == "ENDHDR":
            break
        if key == "TUPLTYPE":
            tupltypes.append(value)
        elif key in _PAM_REQUIRED:
            if key in fields:
                raise MalformedHeaderError(f"duplicate {key} in PAM header")
            fields[key] = value
        else:
            raise MalformedHeaderError(f"unknown PAM header field {key!r}")

    missing = [k for k in _PAM_REQUIRED if k not in fields]
    if missing:
        raise MalformedHeaderError(f"PAM header lacks {', '.join(missing)}")
    nums = {}
    for key in _PAM_REQUIRED:
        try:
            nums[key] = int(fields[key])
        except ValueError:
            raise MalformedHeaderError(f"{key} {fields[key]!r} is not an integer") from None
        if nums[key] < 0:
            raise MalformedHeaderError(f"{key} must be non-negative")

    if nums["DEPTH"] != 4:
        raise UnsupportedFormatError(f"DEPTH {nums['DEPTH']} unsupported, need 4")
    if nums["MAXVAL"] != 255:
        raise UnsupportedFormatError(f"MAXVAL {nums['MAXVAL']} unsupported, need 255")
    tupltype = " ".join(tupltypes)
    if tupltype != "RGB_ALPHA":
        raise UnsupportedFormatError(f"TUPLTYPE {tupltype or '(none)'!r} unsupported, need RGB_ALPHA")
    return nums["WIDTH"], nums["HEIGHT"], pos


def read_pam(src: Source) -> PixelBuffer:
    """Read one RGB_ALPHA PAM image; bytes after its raster are ignored."""
    data = _read_all(src)
    width, height, pos = _parse_pam_header(data)
    size = _payload_size(width, height)
    payload = data[pos : pos + size]
    if len(payload) < size:
        raise TruncatedRasterError(
            f"{width}x{height} raster needs {size} bytes, found {len(payload)}"
        )
    return _from_payload(width, height, payload)


def write_pam(buf: PixelBuffer, fp: BinaryIO | None = None) -> bytes:
    header = (
        f"P7\nWIDTH {buf.width}\nHEIGHT {buf.height}\nDEPTH 4\nMAXVAL 255\n"
        "TUPLTYPE RGB_ALPHA\nENDHDR\n"
    ).encode("ascii")
    return _emit(header + buf.to_bytes(), fp)


def detect_format(data: bytes) -> str:
    """``"raw"`` or ``"pam"`` by magic bytes."""
    if data[:4] == RAW_MAGIC:
        return "raw"
    if data[:2] == PAM_MAGIC:
        return "pam"
    raise BadMagicError(f"unrecognised image magic {data[:4]!r}")


_READERS = {"raw": read_raw, "pam": read_pam}
_WRITERS = {"raw": write_raw, "pam": write_pam}


def load(path: str | os.PathLike) -> tuple[PixelBuffer, str]:
    """Read an image file, returning the buffer and its detected format."""
    with open(path, "rb") as fp:
        data = fp.read()
    fmt = detect_format(data)
    return _READERS[fmt](io.BytesIO(data)), fmt


def save(path: str | os.PathLike, buf: PixelBuffer, fmt: str = "raw") -> None:
    try:
        writer = _WRITERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
    with open(path, "wb") as fp:
        writer(buf, fp)
