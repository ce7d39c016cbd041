"""Path-sign arithmetic and structural-balance checks."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graph import SignedGraph


def validate_path(graph: SignedGraph, path: Sequence[int]) -> None:
    """Raise ValueError unless path is a simple path of graph edges."""
    if not path:
        raise ValueError("path must contain at least one node")
    if len(set(path)) != len(path):
        raise ValueError(f"path repeats a node: {list(path)}")
    for u, v in zip(path, path[1:]):
        if graph.edge_sign(u, v) is None:
            raise ValueError(f"({u},{v}) is not an edge")


def path_sign(graph: SignedGraph, path: Sequence[int]) -> int:
    """Product of edge signs along the path; +1 for a single node."""
    validate_path(graph, path)
    sign = 1
    for u, v in zip(path, path[1:]):
        sign *= graph.edge_sign(u, v)
    return sign


def is_balanced_node_set(graph: SignedGraph, nodes: Iterable[int]) -> bool:
    """True iff the induced subgraph has no cycle with an odd number of
    negative edges.

    Two-coloring check: a positive edge forces equal colors, a negative edge
    opposite colors; the set is balanced iff no contradiction arises in any
    connected component of the induced subgraph.
    """
    node_set = set(nodes)
    color: dict[int, int] = {}
    for start in node_set:
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, s in graph.neighbors(u):
                if v not in node_set:
                    continue
                want = color[u] if s == 1 else 1 - color[u]
                if v not in color:
                    color[v] = want
                    queue.append(v)
                elif color[v] != want:
                    return False
    return True


def is_balanced_path(graph: SignedGraph, path: Sequence[int]) -> bool:
    """Balance of the subgraph induced by the path's nodes, chords included."""
    validate_path(graph, path)
    return is_balanced_node_set(graph, path)
