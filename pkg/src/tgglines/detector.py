"""Estimator-style wrapper so detection drops into sklearn pipelines."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .pipeline import DetectionResult, detect
from .validation import check_binary_image

__all__ = ["LineSegmentDetector"]


class LineSegmentDetector(BaseEstimator, TransformerMixin):
    """Stateless line-segment detector with the fit/transform protocol.

    There is deliberately nothing to configure: ``get_params()`` is
    empty because the only tolerance in the algorithm is derived per
    path from its own geometry.  ``fit`` just validates and returns
    ``self``; ``transform`` maps one binary image to an ``(n, 4)`` float
    array of segments as ``(row1, col1, row2, col2)`` rows.
    """

    def fit(self, X, y=None) -> "LineSegmentDetector":
        check_binary_image(X)
        return self

    def transform(self, X) -> np.ndarray:
        result = self.detect(X)
        if not result.segments:
            return np.zeros((0, 4), dtype=float)
        rows = [(*s.p1, *s.p2) for s in result.segments]
        return np.asarray(rows, dtype=float)

    def detect(self, X) -> DetectionResult:
        """Full detection result (segments plus connectivity graph)."""
        return detect(check_binary_image(X))
