"""Zhang-Suen thinning of binary rasters down to 1-pixel skeletons.

The classic two-sub-pass parallel scheme: each sub-pass evaluates every
foreground pixel against a snapshot of the grid and deletes the flagged
set at once, so scan order never matters.  With the 8-neighborhood laid
out clockwise from north as P2..P9, a pixel is flagged when

* 2 <= B(p) <= 6, where B counts foreground neighbors,
* A(p) == 1, where A counts 0->1 transitions around P2..P9 cyclically,
* sub-pass 1: P2*P4*P6 == 0 and P4*P6*P8 == 0,
* sub-pass 2: P2*P4*P8 == 0 and P2*P6*P8 == 0.

Sub-pass 1 peels south-east boundary pixels, sub-pass 2 the north-west
ones; the pair alternates until a fixed point.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BinaryImage

__all__ = ["Skeleton", "ThinningConvergenceError", "thin", "foreground_pixels"]


class ThinningConvergenceError(RuntimeError):
    """Iteration cap exceeded without reaching a fixed point."""


@dataclass(frozen=True, eq=False)
class Skeleton:
    """1-pixel-wide centerline mask, same frame as the source image."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Skeleton):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def _neighbor_views(padded: np.ndarray) -> tuple[np.ndarray, ...]:
    """Clockwise ring P2..P9 (N, NE, E, SE, S, SW, W, NW) as grid views."""
    return (
        padded[:-2, 1:-1],
        padded[:-2, 2:],
        padded[1:-1, 2:],
        padded[2:, 2:],
        padded[2:, 1:-1],
        padded[2:, :-2],
        padded[1:-1, :-2],
        padded[:-2, :-2],
    )


def _sub_pass(padded: np.ndarray, first: bool) -> int:
    center = padded[1:-1, 1:-1]
    ring = _neighbor_views(padded)
    b = np.zeros(center.shape, dtype=np.uint8)
    for view in ring:
        b += view
    a = np.zeros(center.shape, dtype=np.uint8)
    for i in range(8):
        a += (ring[i] == 0) & (ring[(i + 1) % 8] == 1)
    p2, _, p4, _, p6, _, p8, _ = ring
    if first:
        edge = ((p2 & p4 & p6) == 0) & ((p4 & p6 & p8) == 0)
    else:
        edge = ((p2 & p4 & p8) == 0) & ((p2 & p6 & p8) == 0)
    flagged = (center == 1) & (b >= 2) & (b <= 6) & (a == 1) & edge
    count = int(flagged.sum())
    if count:
        center[flagged] = 0
    return count


def thin(img: BinaryImage) -> Skeleton:
    """Thin an ink mask to its skeleton (fixed point of the two sub-passes)."""
    padded = np.pad(img.pixels, 1).astype(np.uint8)
    cap = img.width * img.height
    for _ in range(max(cap, 1)):
        removed = _sub_pass(padded, first=True)
        removed += _sub_pass(padded, first=False)
        if removed == 0:
            return Skeleton(padded[1:-1, 1:-1])
    raise ThinningConvergenceError(
        f"no fixed point after {cap} passes on a {img.width}x{img.height} image"
    )


def foreground_pixels(skeleton: Skeleton) -> list[tuple[int, int]]:
    """Skeleton pixel coordinates as (row, col), in row-major order."""
    return [(int(r), int(c)) for r, c in np.argwhere(skeleton.pixels)]
