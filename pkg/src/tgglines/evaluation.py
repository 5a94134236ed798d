"""Detection quality scoring against hand-annotated ground truth.

A detected segment supports a ground-truth segment when it runs in the
same direction (angle gate) and sits on top of it (perpendicular offset
gate).  Supporting segments are projected onto the ground-truth line and
the covered fraction of its length decides the credit:

* full coverage in a few connected pieces   -> 1.0
* full coverage shattered into many pieces  -> 0.5
* at least half covered                     -> 0.5
* anything less                             -> 0.0

Double-line drawings (each stroke drawn as two parallel rails) are
scored per rail at half value, so one full rail earns 0.5 and one
half-covered rail 0.25.  Accuracy is the weight total over the number
of annotated segments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

from .simplify import LineSegment

__all__ = [
    "EvalConfig",
    "GroundTruth",
    "GtScore",
    "MatchReport",
    "match_coverage",
    "score_gt_segment",
    "evaluate",
    "aggregate_weights",
    "format_percent",
    "double_line_violations",
]

_EPS = 1e-9

# weight vocabulary shared with annotators' rubric
FULL = 1.0
HALF = 0.5
QUARTER = 0.25
NONE = 0.0


@dataclass(frozen=True)
class EvalConfig:
    """Matching tolerances; defaults suit 1-3 px wide scanned diagrams."""

    angle_tol_deg: float = 10.0
    dist_tol_px: float = 3.0
    full_threshold: float = 0.9
    fragment_limit: int = 4
    double_line: bool = False

    def __post_init__(self) -> None:
        if not 0 < self.angle_tol_deg <= 90:
            raise ValueError("angle tolerance must be in (0, 90] degrees")
        if self.dist_tol_px <= 0:
            raise ValueError("distance tolerance must be positive")
        if not 0.5 <= self.full_threshold <= 1.0:
            raise ValueError("full-coverage threshold must be in [0.5, 1.0]")
        if self.fragment_limit < 1:
            raise ValueError("fragment limit must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class GroundTruth:
    """Annotated segments for one image."""

    image: str
    segments: list[LineSegment]
    annotator: str = ""
    created: str = ""

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("ground truth needs at least one segment")


@dataclass(frozen=True)
class GtScore:
    index: int
    weight: float
    matched: tuple[int, ...]
    tag: str


@dataclass
class MatchReport:
    config: EvalConfig
    n_t: int
    n_c: float
    accuracy: float
    per_gt: list[GtScore] = field(default_factory=list)


def _direction_angle(p1, p2) -> float:
    """Orientation of a segment in degrees, folded into [0, 180)."""
    return math.degrees(math.atan2(p2[1] - p1[1], p2[0] - p1[0])) % 180.0


def _angle_gap(a: float, b: float) -> float:
    d = abs(a - b) % 180.0
    return min(d, 180.0 - d)


@dataclass(frozen=True)
class _Support:
    detected_id: int
    start: float
    end: float
    mean_offset: float

    @property
    def length(self) -> float:
        return self.end - self.start


def _supports(gt: LineSegment, detected: list[LineSegment],
              angle_tol: float, dist_tol: float) -> list[_Support]:
    a = (float(gt.p1[0]), float(gt.p1[1]))
    b = (float(gt.p2[0]), float(gt.p2[1]))
    length = math.dist(a, b)
    if length < _EPS:
        raise ValueError("ground-truth segment has zero length")
    ux, uy = (b[0] - a[0]) / length, (b[1] - a[1]) / length
    gt_angle = _direction_angle(a, b)

    found: list[_Support] = []
    for i, seg in enumerate(detected):
        q1 = (float(seg.p1[0]), float(seg.p1[1]))
        q2 = (float(seg.p2[0]), float(seg.p2[1]))
        if math.dist(q1, q2) < _EPS:
            continue
        if _angle_gap(gt_angle, _direction_angle(q1, q2)) > angle_tol:
            continue
        # signed perpendicular offsets; linear along the segment, so the
        # endpoints carry the extremes
        o1 = ux * (q1[1] - a[1]) - uy * (q1[0] - a[0])
        o2 = ux * (q2[1] - a[1]) - uy * (q2[0] - a[0])
        if max(abs(o1), abs(o2)) > dist_tol:
            continue
        t1 = (q1[0] - a[0]) * ux + (q1[1] - a[1]) * uy
        t2 = (q2[0] - a[0]) * ux + (q2[1] - a[1]) * uy
        lo, hi = min(t1, t2), max(t1, t2)
        lo, hi = max(lo, 0.0), min(hi, length)
        if hi - lo < _EPS:
            continue
        found.append(_Support(i, lo, hi, (o1 + o2) / 2.0))
    return found


def _union_length(supports: list[_Support]) -> float:
    if not supports:
        return 0.0
    spans = sorted((s.start, s.end) for s in supports)
    total, cur_lo, cur_hi = 0.0, spans[0][0], spans[0][1]
    for lo, hi in spans[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    return total + (cur_hi - cur_lo)


def _fragment_count(supports: list[_Support], gap: float) -> int:
    """Connected clusters of support spans; gaps up to ``gap`` px fuse."""
    if not supports:
        return 0
    spans = sorted((s.start, s.end) for s in supports)
    groups, cur_hi = 1, spans[0][1]
    for lo, hi in spans[1:]:
        if lo > cur_hi + gap:
            groups += 1
            cur_hi = hi
        else:
            cur_hi = max(cur_hi, hi)
    return groups


def match_coverage(gt: LineSegment, detected: list[LineSegment],
                   angle_tol: float = 10.0, dist_tol: float = 3.0,
                   ) -> tuple[float, list[int]]:
    """Covered fraction of a ground-truth segment and who covered it.

    Coverage is the length of the union of clipped projections of all
    supporting detected segments, over the ground-truth length.  Adding
    more detected segments can only grow it.
    """
    a = (float(gt.p1[0]), float(gt.p1[1]))
    b = (float(gt.p2[0]), float(gt.p2[1]))
    length = math.dist(a, b)
    supports = _supports(gt, detected, angle_tol, dist_tol)
    coverage = _union_length(supports) / length
    return min(coverage, 1.0), sorted(s.detected_id for s in supports)


def score_gt_segment(coverage: float, fragment_count: int, double_line: bool,
                     *, full_threshold: float = 0.9, fragment_limit: int = 4) -> float:
    """Credit for one annotated line (or one rail in double-line mode).

    Full coverage through at most ``fragment_limit`` connected pieces
    earns full credit; shattering the same coverage into more pieces
    halves it.  Double-line mode scores a single rail, so every value is
    halved again.
    """
    if coverage >= full_threshold:
        weight = FULL if fragment_count <= fragment_limit else HALF
    elif coverage >= 0.5:
        weight = HALF
    else:
        weight = NONE
    return weight / 2.0 if double_line else weight


def _tag_for(weight: float, double_line: bool) -> str:
    if double_line:
        if weight == FULL:
            return "double_full"
        if weight == HALF:
            return "double_single"
        if weight == QUARTER:
            return "double_half"
        return "none"
    if weight == FULL:
        return "full"
    if weight == HALF:
        return "partial"
    return "none"


def evaluate(gt: GroundTruth, detected: list[LineSegment],
             config: EvalConfig | None = None) -> MatchReport:
    """Score every annotated segment and aggregate into a report.

    In double-line mode supports are split into two rails by the side of
    the annotated centerline they fall on; two full rails give 1.0, one
    full rail 0.5, and a half-covered rail 0.25 (the rubric has no value
    between 0.5 and 1.0, so a full plus a partial rail stays at 0.5).
    """
    cfg = config or EvalConfig()
    per_gt: list[GtScore] = []
    for idx, seg in enumerate(gt.segments):
        supports = _supports(seg, detected, cfg.angle_tol_deg, cfg.dist_tol_px)
        length = math.dist(seg.p1, seg.p2)
        matched = tuple(sorted(s.detected_id for s in supports))
        if cfg.double_line:
            rail_a = [s for s in supports if s.mean_offset >= 0]
            rail_b = [s for s in supports if s.mean_offset < 0]
            scores = []
            for rail in (rail_a, rail_b):
                cov = min(_union_length(rail) / length, 1.0)
                frags = _fragment_count(rail, cfg.dist_tol_px)
                scores.append(score_gt_segment(
                    cov, frags, True,
                    full_threshold=cfg.full_threshold,
                    fragment_limit=cfg.fragment_limit,
                ))
            both_full = all(s == FULL / 2 for s in scores)
            weight = FULL if both_full else max(scores)
            tag = _tag_for(weight, True)
        else:
            cov = min(_union_length(supports) / length, 1.0)
            frags = _fragment_count(supports, cfg.dist_tol_px)
            weight = score_gt_segment(
                cov, frags, False,
                full_threshold=cfg.full_threshold,
                fragment_limit=cfg.fragment_limit,
            )
            if weight == HALF and cov >= cfg.full_threshold:
                tag = "fragmented"
            else:
                tag = _tag_for(weight, False)
        per_gt.append(GtScore(index=idx, weight=weight, matched=matched, tag=tag))

    n_c, accuracy = aggregate_weights([g.weight for g in per_gt], len(gt.segments))
    return MatchReport(config=cfg, n_t=len(gt.segments), n_c=n_c,
                       accuracy=accuracy, per_gt=per_gt)


def aggregate_weights(weights: list[float], n_t: int) -> tuple[float, float]:
    """Correct-count and accuracy from a multiset of per-line credits."""
    if n_t < 1:
        raise ValueError("need at least one ground-truth segment")
    n_c = float(sum(weights))
    return n_c, n_c / n_t


def format_percent(accuracy: float) -> str:
    """Accuracy as a percent string, up to 2 decimals: 0.84 -> '84%'."""
    return f"{round(accuracy * 100.0, 2):g}%"


def double_line_violations(segments: list[LineSegment],
                           angle_tol: float = 10.0, dist_tol: float = 3.0,
                           ) -> list[tuple[int, int]]:
    """Pairs of near-parallel, near-coincident, strongly overlapping segments.

    A skeleton-based detector should never emit two copies of the same
    stroke; any returned pair is a defect.
    """
    out: list[tuple[int, int]] = []
    for i in range(len(segments)):
        gi = segments[i]
        len_i = math.dist(gi.p1, gi.p2)
        if len_i < _EPS:
            continue
        for j in range(i + 1, len(segments)):
            gj = segments[j]
            len_j = math.dist(gj.p1, gj.p2)
            if len_j < _EPS:
                continue
            a1 = _direction_angle(gi.p1, gi.p2)
            a2 = _direction_angle(gj.p1, gj.p2)
            if _angle_gap(a1, a2) >= angle_tol:
                continue
            sup = _supports(gi, [gj], angle_tol, dist_tol)
            if not sup:
                continue
            overlap = _union_length(sup)
            if overlap > 0.5 * len_i and overlap > 0.5 * len_j:
                out.append((i, j))
    return out
