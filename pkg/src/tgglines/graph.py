"""Skeleton pixels as an undirected graph.

One node per skeleton pixel, one edge per 8-adjacent pixel pair.  Node
ids are assigned in row-major scan order, which pins down every
downstream ordering (path walks, connectivity edges, JSON exports).

Node roles follow the degree taxonomy: a node with one neighbor ends a
line, a node with more than two neighbors joins several, and the
degree-2 remainder is interior to some stroke.  Interior nodes where the
stroke merely changes direction carry no structural information, so
they are not treated as salient here; only ends and junctions anchor
path extraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .thinning import Skeleton

__all__ = ["NodeKind", "PixelNode", "SkeletonGraph", "build_graph", "salient_nodes"]

_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)


class NodeKind(Enum):
    END = "end"
    INTERIOR = "interior"
    JUNCTION = "junction"


def _kind_for_degree(degree: int) -> NodeKind:
    if degree > 2:
        return NodeKind.JUNCTION
    if degree == 2:
        return NodeKind.INTERIOR
    return NodeKind.END  # degree 0 or 1


@dataclass(frozen=True)
class PixelNode:
    id: int
    row: int
    col: int
    degree: int
    kind: NodeKind


@dataclass
class SkeletonGraph:
    """Pixel adjacency graph; ``adjacency[i]`` lists neighbor ids ascending."""

    nodes: list[PixelNode]
    adjacency: list[list[int]]
    width: int
    height: int

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def coord(self, node_id: int) -> tuple[int, int]:
        node = self.nodes[node_id]
        return (node.row, node.col)


def build_graph(skeleton: Skeleton) -> SkeletonGraph:
    """Build the pixel graph for a skeleton mask.

    Ids follow row-major pixel order and adjacency lists are sorted, so
    identical skeletons always produce identical graphs.
    """
    coords = np.argwhere(skeleton.pixels)
    height, width = skeleton.pixels.shape

    # padded id grid as plain lists: fast scalar lookups, no bounds checks
    grid = [[-1] * (width + 2) for _ in range(height + 2)]
    pairs = [(int(r), int(c)) for r, c in coords]
    for node_id, (r, c) in enumerate(pairs):
        grid[r + 1][c + 1] = node_id

    nodes: list[PixelNode] = []
    adjacency: list[list[int]] = []
    for node_id, (r, c) in enumerate(pairs):
        neighbors = []
        for dr, dc in _OFFSETS:
            other = grid[r + 1 + dr][c + 1 + dc]
            if other >= 0:
                neighbors.append(other)
        neighbors.sort()
        adjacency.append(neighbors)
        degree = len(neighbors)
        nodes.append(PixelNode(node_id, r, c, degree, _kind_for_degree(degree)))
    return SkeletonGraph(nodes=nodes, adjacency=adjacency, width=width, height=height)


def salient_nodes(graph: SkeletonGraph) -> list[int]:
    """Ids of line ends and junctions, ascending."""
    return [n.id for n in graph.nodes if n.kind is not NodeKind.INTERIOR]
