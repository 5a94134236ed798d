"""Line segment detection for low-quality binary diagrams.

The detector thins the ink to a one-pixel skeleton, views the skeleton
pixels as a graph, cuts that graph at its ends and junctions into
paths, links paths that share a salient pixel into a connectivity
graph, and finally straightens each path with a self-tuned
simplification tolerance.  The public surface mirrors those stages so
each one can be used on its own.
"""
from .raster import (
    BinaryImage,
    EmptyImageError,
    GrayImage,
    MalformedImageError,
    RasterError,
    UnsupportedFormatError,
    binarize,
    load_image,
    save_binary,
)
from .thinning import Skeleton, ThinningConvergenceError, foreground_pixels, thin
from .graph import NodeKind, PixelNode, SkeletonGraph, build_graph, salient_nodes
from .paths import LSCG, LscgEdge, PixelPath, build_lscg, segment_paths
from .simplify import (
    DetectedSegment,
    LineSegment,
    SimplifiedLSCG,
    SimplifiedPath,
    adaptive_epsilon,
    convex_hull,
    douglas_peucker,
    segments_of,
    simplify_lscg,
)
from .evaluation import (
    EvalConfig,
    GroundTruth,
    GtScore,
    MatchReport,
    aggregate_weights,
    double_line_violations,
    evaluate,
    format_percent,
    match_coverage,
    score_gt_segment,
)
from .pipeline import DetectionResult, detect
from .validation import check_binary_image

__version__ = "0.1.0"

__all__ = [
    "BinaryImage", "GrayImage", "RasterError", "UnsupportedFormatError",
    "MalformedImageError", "EmptyImageError", "load_image", "binarize",
    "save_binary",
    "Skeleton", "ThinningConvergenceError", "thin", "foreground_pixels",
    "NodeKind", "PixelNode", "SkeletonGraph", "build_graph", "salient_nodes",
    "PixelPath", "LscgEdge", "LSCG", "segment_paths", "build_lscg",
    "convex_hull", "adaptive_epsilon", "douglas_peucker",
    "SimplifiedPath", "SimplifiedLSCG", "LineSegment", "DetectedSegment",
    "simplify_lscg", "segments_of",
    "EvalConfig", "GroundTruth", "GtScore", "MatchReport", "match_coverage",
    "score_gt_segment", "evaluate", "aggregate_weights", "format_percent",
    "double_line_violations",
    "DetectionResult", "detect", "check_binary_image",
    "LineSegmentDetector",
]


def __getattr__(name: str):
    # pulled in lazily: keeps CLI startup free of the sklearn import
    if name == "LineSegmentDetector":
        from .detector import LineSegmentDetector

        return LineSegmentDetector
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
