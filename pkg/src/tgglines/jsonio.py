"""JSON schemas for detections, ground truth, and match reports.

All writers go through one canonical serializer: two-space indent,
stable key order (insertion order of the dicts built here), floats
rounded to 3 decimals.  Identical inputs therefore serialize to
identical bytes, which the CLI relies on.
"""
from __future__ import annotations

import json
from typing import Any

from .evaluation import EvalConfig, GroundTruth, MatchReport
from .graph import SkeletonGraph
from .paths import LSCG
from .pipeline import DetectionResult
from .simplify import LineSegment, SimplifiedLSCG

__all__ = [
    "SchemaError",
    "dumps_canonical",
    "lscg_to_dict",
    "simplified_to_dict",
    "detection_to_dict",
    "graph_to_dict",
    "ground_truth_to_dict",
    "ground_truth_from_dict",
    "segments_from_detection_dict",
    "report_to_dict",
]


class SchemaError(ValueError):
    """Input JSON does not match the expected schema; names the field."""


def _rounded(value: Any) -> Any:
    if isinstance(value, float):
        return round(value, 3)
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def dumps_canonical(obj: Any) -> str:
    return json.dumps(_rounded(obj), indent=2) + "\n"


def _coord(c) -> list:
    return [int(c[0]), int(c[1])] if float(c[0]).is_integer() and float(c[1]).is_integer() \
        else [float(c[0]), float(c[1])]


def lscg_to_dict(lscg: LSCG) -> dict:
    return {
        "paths": [
            {"id": p.id, "closed": p.closed, "nodes": [_coord(c) for c in p.nodes]}
            for p in lscg.paths
        ],
        "edges": [{"a": e.a, "b": e.b, "via": _coord(e.via)} for e in lscg.edges],
    }


def simplified_to_dict(s: SimplifiedLSCG) -> dict:
    return {
        "paths": [
            {
                "id": p.source_path_id,
                "closed": p.closed,
                "vertices": [_coord(c) for c in p.vertices],
                "epsilon": float(p.epsilon_used),
            }
            for p in s.paths
        ],
        "edges": [{"a": e.a, "b": e.b, "via": _coord(e.via)} for e in s.edges],
    }


def detection_to_dict(result: DetectionResult) -> dict:
    body = simplified_to_dict(result.lscg)
    counts = {k: v for k, v in result.stats.items() if k != "elapsed"}
    return {
        "width": result.lscg.width,
        "height": result.lscg.height,
        "stats": counts,
        "paths": body["paths"],
        "edges": body["edges"],
        "segments": [
            {"path": s.path_id, "p1": _coord(s.p1), "p2": _coord(s.p2)}
            for s in result.segments
        ],
    }


def graph_to_dict(graph: SkeletonGraph) -> dict:
    edges = []
    for u in range(graph.node_count):
        for v in graph.adjacency[u]:
            if u < v:
                edges.append([u, v])
    return {
        "nodes": [[n.id, n.row, n.col, n.degree] for n in graph.nodes],
        "edges": edges,
    }


def ground_truth_to_dict(gt: GroundTruth) -> dict:
    return {
        "image": gt.image,
        "annotator": gt.annotator,
        "created": gt.created,
        "segments": [{"p1": _coord(s.p1), "p2": _coord(s.p2)} for s in gt.segments],
    }


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{where}.{key}: missing required field")
    return obj[key]


def _parse_point(value: Any, where: str) -> tuple:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise SchemaError(f"{where}: expected [row, col]")
    return (value[0], value[1])


def _parse_segment(entry: Any, where: str) -> LineSegment:
    if not isinstance(entry, dict):
        raise SchemaError(f"{where}: expected an object")
    p1 = _parse_point(_require(entry, "p1", where), f"{where}.p1")
    p2 = _parse_point(_require(entry, "p2", where), f"{where}.p2")
    if p1 == p2:
        raise SchemaError(f"{where}: zero-length segment")
    return LineSegment(p1, p2)


def ground_truth_from_dict(data: Any) -> GroundTruth:
    if not isinstance(data, dict):
        raise SchemaError("root: expected an object")
    image = _require(data, "image", "root")
    if not isinstance(image, str):
        raise SchemaError("root.image: expected a string")
    raw_segments = _require(data, "segments", "root")
    if not isinstance(raw_segments, list) or not raw_segments:
        raise SchemaError("root.segments: expected a non-empty array")
    segments = [
        _parse_segment(entry, f"segments[{i}]") for i, entry in enumerate(raw_segments)
    ]
    annotator = data.get("annotator", "")
    created = data.get("created", "")
    if not isinstance(annotator, str):
        raise SchemaError("root.annotator: expected a string")
    if not isinstance(created, str):
        raise SchemaError("root.created: expected a string")
    return GroundTruth(image=image, segments=segments, annotator=annotator, created=created)


def segments_from_detection_dict(data: Any) -> list[LineSegment]:
    if not isinstance(data, dict):
        raise SchemaError("root: expected an object")
    raw = _require(data, "segments", "root")
    if not isinstance(raw, list):
        raise SchemaError("root.segments: expected an array")
    return [_parse_segment(entry, f"segments[{i}]") for i, entry in enumerate(raw)]


def report_to_dict(report: MatchReport) -> dict:
    return {
        "config": report.config.to_dict(),
        "n_t": report.n_t,
        "n_c": report.n_c,
        "accuracy": report.accuracy,
        "per_gt": [
            {
                "index": g.index,
                "weight": g.weight,
                "matched": list(g.matched),
                "tag": g.tag,
            }
            for g in report.per_gt
        ],
    }
