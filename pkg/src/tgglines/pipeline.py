"""End-to-end detection: binary image in, line segments out.

The whole chain is parameter-free; the only tolerance in play is the
per-path simplification budget, and each path derives that from its own
convex hull.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .graph import NodeKind, build_graph, salient_nodes
from .paths import build_lscg, segment_paths
from .raster import BinaryImage
from .simplify import DetectedSegment, SimplifiedLSCG, segments_of, simplify_lscg
from .thinning import thin

__all__ = ["DetectionResult", "detect"]

log = logging.getLogger("tgglines.pipeline")


@dataclass
class DetectionResult:
    """Detected segments plus the simplified connectivity graph behind them."""

    segments: list[DetectedSegment]
    lscg: SimplifiedLSCG
    stats: dict = field(default_factory=dict)


def detect(image: BinaryImage) -> DetectionResult:
    """Run the full skeleton-graph detection chain on one binary image."""
    marks: list[tuple[str, float]] = []

    def lap(stage: str) -> None:
        marks.append((stage, time.perf_counter()))

    lap("start")
    skeleton = thin(image)
    lap("thin")
    graph = build_graph(skeleton)
    salient = salient_nodes(graph)
    lap("graph")
    paths = segment_paths(graph, salient)
    lscg = build_lscg(graph, paths, salient)
    lap("segment")
    simplified = simplify_lscg(lscg)
    segments = segments_of(simplified)
    lap("simplify")

    elapsed = {
        stage: marks[i][1] - marks[i - 1][1] for i, (stage, _) in enumerate(marks) if i
    }
    stats = {
        "skeleton_pixels": int(skeleton.pixels.sum()),
        "paths": len(paths),
        "junctions": sum(1 for n in graph.nodes if n.kind is NodeKind.JUNCTION),
        "ends": sum(1 for n in graph.nodes if n.kind is NodeKind.END),
        "segments": len(segments),
        "elapsed": elapsed,
    }
    log.debug(
        "detect: %dx%d image, %d skeleton px, %d paths, %d segments, %.1f ms",
        image.width, image.height, stats["skeleton_pixels"], stats["paths"],
        stats["segments"], 1000.0 * sum(elapsed.values()),
    )
    return DetectionResult(segments=segments, lscg=simplified, stats=stats)
