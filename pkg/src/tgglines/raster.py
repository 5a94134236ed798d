"""Raster input/output and binarization.

Readers cover 8-bit grayscale and RGB PNG plus the netpbm bitmap family
(PBM ``P1``/``P4``, PGM ``P2``/``P5``).  Everything is normalized to an
8-bit luminance grid before thresholding.  PBM follows netpbm ink
semantics: a 1 bit is black, so it maps to luminance 0.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

__all__ = [
    "RasterError",
    "UnsupportedFormatError",
    "MalformedImageError",
    "EmptyImageError",
    "GrayImage",
    "BinaryImage",
    "load_image",
    "binarize",
    "save_binary",
]

_WHITESPACE = b" \t\n\r\x0b\x0c"


class RasterError(ValueError):
    """Base error for image decoding problems."""


class UnsupportedFormatError(RasterError):
    """File magic is not one of the supported formats."""


class MalformedImageError(RasterError):
    """Recognized format but the payload cannot be decoded."""


class EmptyImageError(RasterError):
    """Image declares a zero width or height."""


def _frozen_grid(values: np.ndarray) -> np.ndarray:
    grid = np.ascontiguousarray(values, dtype=np.uint8)
    grid.setflags(write=False)
    return grid


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit luminance raster, row-major, (height, width)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D luminance grid, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise EmptyImageError(f"zero-dimension image: {arr.shape}")
        object.__setattr__(self, "pixels", _frozen_grid(arr))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Thresholded raster: 1 marks foreground ink, 0 background."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D binary grid, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise EmptyImageError(f"zero-dimension image: {arr.shape}")
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        bad = (arr != 0) & (arr != 1)
        if bad.any():
            raise ValueError("binary image values must be 0 or 1")
        object.__setattr__(self, "pixels", _frozen_grid(arr))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def foreground_count(self) -> int:
        return int(self.pixels.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


class _PnmReader:
    """Header tokenizer for netpbm files; tracks the raster offset."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 2  # past the magic number

    def next_int(self, what: str) -> int:
        token = self._next_token()
        if token is None:
            raise MalformedImageError(f"truncated header, missing {what}")
        try:
            value = int(token)
        except ValueError:
            raise MalformedImageError(f"bad {what} token {token!r}") from None
        return value

    def _next_token(self) -> bytes | None:
        data, n = self.data, len(self.data)
        i = self.pos
        while i < n:
            c = data[i : i + 1]
            if c in (b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c"):
                i += 1
            elif c == b"#":
                while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                    i += 1
            else:
                break
        if i >= n:
            self.pos = i
            return None
        j = i
        while j < n and data[j : j + 1] not in (
            b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c",
        ):
            j += 1
        self.pos = j
        return data[i:j]

    def raster(self) -> bytes:
        # binary raster starts after exactly one whitespace byte
        if self.pos >= len(self.data):
            raise MalformedImageError("missing raster data")
        return self.data[self.pos + 1 :]


def _check_dims(width: int, height: int) -> None:
    if width < 0 or height < 0:
        raise MalformedImageError(f"negative image dimensions {width}x{height}")
    if width == 0 or height == 0:
        raise EmptyImageError(f"zero-dimension image {width}x{height}")


def _decode_p1(reader: _PnmReader, width: int, height: int) -> np.ndarray:
    data, n = reader.data, len(reader.data)
    bits: list[int] = []
    want = width * height
    i = reader.pos
    while i < n and len(bits) < want:
        c = data[i]
        if c == 0x23:  # '#'
            while i < n and data[i] not in (0x0A, 0x0D):
                i += 1
        elif c == 0x30:
            bits.append(0)
        elif c == 0x31:
            bits.append(1)
        elif bytes((c,)) in _WHITESPACE:
            pass
        else:
            raise MalformedImageError(f"unexpected byte {c:#x} in bitmap body")
        i += 1
    if len(bits) < want:
        raise MalformedImageError("truncated bitmap body")
    ink = np.array(bits, dtype=np.uint8).reshape(height, width)
    return np.where(ink == 1, 0, 255).astype(np.uint8)  # 1 bit = black


def _decode_p4(reader: _PnmReader, width: int, height: int) -> np.ndarray:
    raster = reader.raster()
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    if len(raster) < need:
        raise MalformedImageError("truncated packed bitmap body")
    packed = np.frombuffer(raster[:need], dtype=np.uint8).reshape(height, row_bytes)
    ink = np.unpackbits(packed, axis=1)[:, :width]
    return np.where(ink == 1, 0, 255).astype(np.uint8)


def _decode_ascii_gray(reader: _PnmReader, width: int, height: int, maxval: int) -> np.ndarray:
    values = []
    for _ in range(width * height):
        values.append(reader.next_int("gray sample"))
    grid = np.array(values, dtype=np.float64).reshape(height, width)
    if grid.min() < 0 or grid.max() > maxval:
        raise MalformedImageError("gray sample out of range")
    return np.round(grid * (255.0 / maxval)).astype(np.uint8)


def _decode_p5(reader: _PnmReader, width: int, height: int, maxval: int) -> np.ndarray:
    raster = reader.raster()
    if maxval < 256:
        need = width * height
        if len(raster) < need:
            raise MalformedImageError("truncated gray body")
        grid = np.frombuffer(raster[:need], dtype=np.uint8).reshape(height, width)
    else:
        need = 2 * width * height
        if len(raster) < need:
            raise MalformedImageError("truncated gray body")
        grid = (
            np.frombuffer(raster[:need], dtype=">u2").reshape(height, width).astype(np.float64)
        )
    if maxval == 255:
        return grid.astype(np.uint8)
    grid = np.asarray(grid, dtype=np.float64)
    if grid.max() > maxval:
        raise MalformedImageError("gray sample out of range")
    return np.round(grid * (255.0 / maxval)).astype(np.uint8)


def _load_pnm(data: bytes) -> GrayImage:
    magic = data[:2]
    reader = _PnmReader(data)
    width = reader.next_int("width")
    height = reader.next_int("height")
    _check_dims(width, height)
    if magic == b"P1":
        return GrayImage(_decode_p1(reader, width, height))
    if magic == b"P4":
        return GrayImage(_decode_p4(reader, width, height))
    maxval = reader.next_int("maxval")
    if not 1 <= maxval <= 65535:
        raise MalformedImageError(f"maxval {maxval} out of range")
    if magic == b"P2":
        return GrayImage(_decode_ascii_gray(reader, width, height, maxval))
    return GrayImage(_decode_p5(reader, width, height, maxval))


def _load_png(data: bytes) -> GrayImage:
    try:
        with Image.open(io.BytesIO(data)) as img:
            # ITU-R 601 perceptual weighting for color inputs
            gray = img.convert("L")
            arr = np.asarray(gray, dtype=np.uint8)
    except UnidentifiedImageError:
        raise MalformedImageError("PNG payload could not be decoded") from None
    except OSError as exc:
        raise MalformedImageError(f"PNG payload could not be decoded: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyImageError(f"zero-dimension image: {arr.shape}")
    return GrayImage(arr)


def load_image(path: str) -> GrayImage:
    """Read a PNG or PBM/PGM file into a GrayImage.

    Raises OSError when the file cannot be read, UnsupportedFormatError
    for unknown magic bytes and MalformedImageError / EmptyImageError
    for undecodable or degenerate payloads.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) == 0:
        raise MalformedImageError(f"{path}: empty file")
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(data)
    magic = data[:2]
    if magic in (b"P1", b"P2", b"P4", b"P5"):
        return _load_pnm(data)
    if magic in (b"P3", b"P6"):
        raise UnsupportedFormatError("color PPM input is not supported")
    raise UnsupportedFormatError(f"unrecognized image magic {data[:4]!r}")


def binarize(img: GrayImage, threshold: int = 128, foreground_is_dark: bool = True) -> BinaryImage:
    """Threshold a luminance grid into an ink mask.

    With ``foreground_is_dark`` (scanned-diagram default) a pixel is ink
    when its luminance is strictly below ``threshold``; inverted inputs
    flip the comparison to ``>= threshold``.
    """
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold {threshold} outside [0, 255]")
    if foreground_is_dark:
        mask = img.pixels < threshold
    else:
        mask = img.pixels >= threshold
    return BinaryImage(mask.astype(np.uint8))


def save_binary(img: BinaryImage, path: str) -> None:
    """Write an ink mask as binary PBM (``P4``); foreground bits are black."""
    packed = np.packbits(img.pixels, axis=1)
    header = f"P4\n{img.width} {img.height}\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(packed.tobytes())
