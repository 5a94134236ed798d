"""Input coercion helpers for the estimator-facing API."""
from __future__ import annotations

import numpy as np

from .raster import BinaryImage

__all__ = ["check_binary_image"]


def check_binary_image(X) -> BinaryImage:
    """Coerce an array-like into a BinaryImage, validating as we go.

    Accepts an existing BinaryImage, a 2-D bool array, or a 2-D numeric
    array whose values are exactly 0 and 1.
    """
    if isinstance(X, BinaryImage):
        return X
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a single 2-D image, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("image has no pixels")
    if arr.dtype == bool:
        return BinaryImage(arr.astype(np.uint8))
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("image values must be 0/1; threshold grayscale first")
    return BinaryImage(arr.astype(np.uint8))
