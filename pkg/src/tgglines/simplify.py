"""Per-path polyline simplification with a self-tuned tolerance.

Each path picks its own Douglas-Peucker tolerance from the geometry it
actually covers: the ratio of its convex hull's area to the hull's
perimeter.  Straight chains have a degenerate hull, so their tolerance
collapses to zero and they reduce to their two endpoints; curvy paths
get a proportionally looser budget.  No global knob exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .paths import LSCG, Coord, LscgEdge

__all__ = [
    "convex_hull",
    "adaptive_epsilon",
    "douglas_peucker",
    "SimplifiedPath",
    "SimplifiedLSCG",
    "LineSegment",
    "DetectedSegment",
    "simplify_lscg",
    "segments_of",
]

Point = tuple[float, float]


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: list[Point]) -> list[Point]:
    """Convex hull vertices in counterclockwise order (monotone chain).

    Duplicates are ignored, collinear boundary points are dropped, and a
    fully collinear input returns just its two extreme points.
    """
    if not points:
        raise ValueError("convex hull of an empty point set")
    unique = sorted(set((float(p[0]), float(p[1])) for p in points))
    if len(unique) == 1:
        return [unique[0]]
    if len(unique) == 2:
        return list(unique)

    def half(seq: list[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(unique)
    upper = half(unique[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:  # all collinear
        return [unique[0], unique[-1]]
    if len(hull) < 3:
        return [unique[0], unique[-1]]
    return hull


def _polygon_area(hull: list[Point]) -> float:
    area = 0.0
    n = len(hull)
    for i in range(n):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % n]
        area += x1 * y2 - x2 * y1
    return abs(area) / 2.0


def _polygon_perimeter(hull: list[Point]) -> float:
    total = 0.0
    n = len(hull)
    for i in range(n):
        total += math.dist(hull[i], hull[(i + 1) % n])
    return total


def adaptive_epsilon(points: list[Point]) -> float:
    """Simplification tolerance for one path: hull area over hull perimeter.

    Collinear or duplicate-riddled inputs have no interior, so the
    tolerance is exactly 0.  Fewer than 3 points is a caller error.
    """
    if len(points) < 3:
        raise ValueError("tolerance needs at least 3 points")
    hull = convex_hull(list(points))
    if len(hull) < 3:
        return 0.0
    area = _polygon_area(hull)
    if area == 0.0:
        return 0.0
    return area / _polygon_perimeter(hull)


def _chord_distance(p: Point, a: Point, b: Point) -> float:
    """Distance from ``p`` to the chord segment a-b.

    The projection is clamped to the segment, so points hanging past an
    endpoint are charged their full distance; dropping a point therefore
    guarantees it stays within tolerance of the simplified polyline, not
    just of some infinite line.  A zero-length chord degenerates to
    plain point distance (loops simplify against their single anchor).
    """
    if a == b:
        return math.dist(p, a)
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.dist(p, (a[0] + t * dx, a[1] + t * dy))


def douglas_peucker(points: list[Point], epsilon: float) -> list[Point]:
    """Classic recursive split simplification, iterative form.

    Keeps both endpoints, splits at the farthest point from the current
    chord when it exceeds ``epsilon`` (first such index wins ties), and
    otherwise drops the whole interior.
    """
    if len(points) < 2:
        raise ValueError("need at least 2 points to simplify")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    n = len(points)
    keep = [False] * n
    keep[0] = keep[-1] = True
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        a, b = points[lo], points[hi]
        best, best_idx = 0.0, -1
        for i in range(lo + 1, hi):
            d = _chord_distance(points[i], a, b)
            if d > best:
                best, best_idx = d, i
        if best > epsilon:
            keep[best_idx] = True
            stack.append((lo, best_idx))
            stack.append((best_idx, hi))
    return [points[i] for i in range(n) if keep[i]]


@dataclass(frozen=True)
class LineSegment:
    """Straight segment between two distinct (row, col) points."""

    p1: Coord
    p2: Coord

    def __post_init__(self) -> None:
        if tuple(self.p1) == tuple(self.p2):
            raise ValueError(f"degenerate segment at {self.p1}")

    @property
    def length(self) -> float:
        return math.dist(self.p1, self.p2)


@dataclass(frozen=True)
class DetectedSegment(LineSegment):
    """Segment traced back to its source path and position within it."""

    path_id: int = -1
    index: int = 0


@dataclass(frozen=True)
class SimplifiedPath:
    source_path_id: int
    vertices: tuple[Coord, ...]
    epsilon_used: float
    closed: bool = False


@dataclass
class SimplifiedLSCG:
    """Same connectivity as the source LSCG, with pruned path geometry."""

    paths: list[SimplifiedPath]
    edges: list[LscgEdge]
    width: int = 0
    height: int = 0
    path_table: dict[int, SimplifiedPath] = field(init=False)

    def __post_init__(self) -> None:
        self.path_table = {p.source_path_id: p for p in self.paths}


def simplify_lscg(lscg: LSCG) -> SimplifiedLSCG:
    """Simplify every path in place of the LSCG, keeping its topology.

    Paths of one or two pixels pass through untouched.  Closed paths are
    opened at their anchor, simplified as a ring, and stay closed.
    """
    simplified: list[SimplifiedPath] = []
    for path in lscg.paths:
        nodes = [(float(r), float(c)) for r, c in path.nodes]
        if len(path.nodes) <= 2:
            simplified.append(
                SimplifiedPath(path.id, tuple(path.nodes), 0.0, path.closed)
            )
            continue
        eps = adaptive_epsilon(nodes)
        ring = nodes + [nodes[0]] if path.closed else nodes
        kept = douglas_peucker(ring, eps)
        if path.closed:
            kept = kept[:-1]
        vertices = tuple((int(r), int(c)) for r, c in kept)
        simplified.append(SimplifiedPath(path.id, vertices, eps, path.closed))
    return SimplifiedLSCG(
        paths=simplified, edges=list(lscg.edges), width=lscg.width, height=lscg.height
    )


def segments_of(simplified: SimplifiedLSCG) -> list[DetectedSegment]:
    """Consecutive vertex pairs of every simplified path, in path order.

    Closed paths contribute their wrap-around pair as well.  Zero-length
    pairs (fully collapsed loops) are skipped.
    """
    out: list[DetectedSegment] = []
    for path in simplified.paths:
        verts = list(path.vertices)
        pairs = list(zip(verts, verts[1:]))
        if path.closed and len(verts) >= 2:
            pairs.append((verts[-1], verts[0]))
        index = 0
        for p1, p2 in pairs:
            if p1 == p2:
                continue
            out.append(DetectedSegment(p1, p2, path_id=path.source_path_id, index=index))
            index += 1
    return out
