"""Path extraction and the line-segment connectivity graph (LSCG).

The pixel graph is cut at its salient nodes (ends and junctions) into
maximal paths whose interiors are pure degree-2 chains.  Components
without any salient node are simple cycles; they become closed paths
anchored at their minimum-id pixel so runs are reproducible.

The LSCG then inverts the picture: each path is one node, and each
salient pixel shared by two different paths contributes one edge keyed
by that pixel.  The same pair of paths may be linked through several
distinct pixels (think of two rails joined at both ends), which yields
several edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import SkeletonGraph

__all__ = ["PixelPath", "LscgEdge", "LSCG", "segment_paths", "build_lscg"]

Coord = tuple[int, int]


@dataclass(frozen=True)
class PixelPath:
    """Ordered chain of skeleton pixels.

    ``closed`` marks a cycle whose last coordinate logically wraps to
    the first.  Open paths repeat their first coordinate at the end in
    exactly one case: a chain that leaves a junction and comes back to
    it (a loop hanging off the junction).
    """

    id: int
    nodes: tuple[Coord, ...]
    closed: bool = False

    def __post_init__(self) -> None:
        if not self.nodes:
            raise ValueError("a path needs at least one coordinate")
        interior = self.nodes[1:] if self.nodes[0] == self.nodes[-1] else self.nodes
        if len(set(interior)) != len(interior):
            raise ValueError("path coordinates must not repeat")

    @property
    def edge_span(self) -> int:
        """Number of pixel-graph edges the path covers."""
        if self.closed:
            return len(self.nodes)
        return len(self.nodes) - 1


@dataclass(frozen=True)
class LscgEdge:
    """Two path ids joined at a salient pixel ``via``."""

    a: int
    b: int
    via: Coord


@dataclass
class LSCG:
    """Paths as nodes, shared salient pixels as edges."""

    paths: list[PixelPath]
    edges: list[LscgEdge]
    width: int = 0
    height: int = 0
    path_table: dict[int, PixelPath] = field(init=False)

    def __post_init__(self) -> None:
        self.path_table = {p.id: p for p in self.paths}

    @property
    def path_ids(self) -> list[int]:
        return [p.id for p in self.paths]


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def segment_paths(graph: SkeletonGraph, salient: list[int]) -> list[PixelPath]:
    """Cut the pixel graph into maximal paths between salient nodes.

    Walk order is fixed: salient nodes ascending, then each incident
    edge toward its smallest unvisited neighbor; leftover edges belong
    to pure cycles, which are anchored at their minimum-id node.  Every
    pixel-graph edge lands in exactly one path.
    """
    salient_set = set(salient)
    visited: set[tuple[int, int]] = set()
    paths: list[PixelPath] = []

    def next_id() -> int:
        return len(paths)

    for start in salient:
        if graph.nodes[start].degree == 0:
            paths.append(PixelPath(next_id(), (graph.coord(start),)))
            continue
        for first_hop in graph.adjacency[start]:
            if _edge_key(start, first_hop) in visited:
                continue
            chain = [start, first_hop]
            visited.add(_edge_key(start, first_hop))
            prev, cur = start, first_hop
            while cur not in salient_set:
                nbrs = graph.adjacency[cur]  # degree 2 while interior
                nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
                visited.add(_edge_key(cur, nxt))
                prev, cur = cur, nxt
                chain.append(cur)
            coords = tuple(graph.coord(n) for n in chain)
            paths.append(PixelPath(next_id(), coords))

    # pure cycles: every remaining node has degree 2 and no salient anchor
    for anchor in range(graph.node_count):
        nbrs = graph.adjacency[anchor]
        if not nbrs or anchor in salient_set:
            continue
        if _edge_key(anchor, nbrs[0]) in visited:
            continue
        chain = [anchor]
        prev, cur = anchor, nbrs[0]
        visited.add(_edge_key(anchor, cur))
        while cur != anchor:
            chain.append(cur)
            two = graph.adjacency[cur]
            nxt = two[1] if two[0] == prev else two[0]
            visited.add(_edge_key(cur, nxt))
            prev, cur = cur, nxt
        coords = tuple(graph.coord(n) for n in chain)
        paths.append(PixelPath(next_id(), coords, closed=True))

    return paths


def build_lscg(graph: SkeletonGraph, paths: list[PixelPath], salient: list[int]) -> LSCG:
    """Join paths that share a salient pixel.

    Edges are emitted per salient node in ascending id, one per
    unordered path pair; a path touching the pixel with both of its
    endpoints still counts once, so no self-loops appear.
    """
    coord_to_salient = {graph.coord(s): s for s in salient}
    at_salient: dict[int, set[int]] = {s: set() for s in salient}
    for path in paths:
        if path.closed:
            continue
        for endpoint in {path.nodes[0], path.nodes[-1]}:
            node_id = coord_to_salient.get(endpoint)
            if node_id is not None:
                at_salient[node_id].add(path.id)

    edges: list[LscgEdge] = []
    for s in salient:
        incident = sorted(at_salient[s])
        via = graph.coord(s)
        for i in range(len(incident)):
            for j in range(i + 1, len(incident)):
                edges.append(LscgEdge(incident[i], incident[j], via))
    return LSCG(paths=paths, edges=edges, width=graph.width, height=graph.height)
