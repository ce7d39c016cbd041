"""Compatibility relations over signed graphs.

Seven relation kinds of increasing permissiveness:

  DPE   direct positive edge
  SPA   all shortest paths positive
  SPM   positive shortest paths at least as many as negative ones
  SPO   at least one positive shortest path
  SBP   a positive structurally balanced path exists (exact search)
  SBPH  heuristic under-approximation of SBP
  NNE   no negative edge between the pair

All kinds are reflexive, symmetric, contain every positive edge's endpoints
and exclude every negative edge's endpoints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from numba import njit

from .balance import is_balanced_node_set
from .graph import SignedGraph, SkillAssignment


class RelationKind(enum.Enum):
    DPE = "DPE"
    SPA = "SPA"
    SPM = "SPM"
    SPO = "SPO"
    SBP = "SBP"
    SBPH = "SBPH"
    NNE = "NNE"

    def __str__(self) -> str:
        return self.value


#: Kinds ordered from strictest to most permissive (SBPH sits inside SBP).
CONTAINMENT_ORDER = (RelationKind.DPE, RelationKind.SPA, RelationKind.SPM,
                     RelationKind.SPO, RelationKind.SBP, RelationKind.NNE)


class SbpBudgetError(ValueError):
    """Exact balanced-path search refused: graph exceeds the node budget."""


@dataclass(frozen=True)
class PathCounts:
    """Signed shortest-path counts from one source.

    pos[x]/neg[x] are the exact numbers of positive/negative shortest
    source-x paths; dist[x] is the hop distance, -1 when unreachable.
    """

    source: int
    pos: np.ndarray
    neg: np.ndarray
    dist: np.ndarray


def _csr_arrays(graph: SignedGraph):
    """Cached flat CSR adjacency: (indptr, neighbors, signs), all int64."""
    cached = graph._cache.get("csr")
    if cached is None:
        n = graph.n
        indptr = np.zeros(n + 1, dtype=np.int64)
        for u in range(n):
            indptr[u + 1] = indptr[u] + graph.degree(u)
        nbrs = np.empty(indptr[-1], dtype=np.int64)
        signs = np.empty(indptr[-1], dtype=np.int64)
        for u in range(n):
            lo = indptr[u]
            for i, (v, s) in enumerate(graph.neighbors(u)):
                nbrs[lo + i] = v
                signs[lo + i] = s
        cached = (indptr, nbrs, signs)
        graph._cache["csr"] = cached
    return cached


@njit(cache=True)
def _bfs_sign_counts(indptr, nbrs, signs, n, q):  # pragma: no cover - jitted
    pos = np.zeros(n, dtype=np.int64)
    neg = np.zeros(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    pos[q] = 1
    dist[q] = 0
    queue[0] = q
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du1 = dist[u] + 1
        for i in range(indptr[u], indptr[u + 1]):
            x = nbrs[i]
            if dist[x] == -1:
                dist[x] = du1
                queue[tail] = x
                tail += 1
            if dist[x] == du1:
                if signs[i] > 0:
                    pos[x] += pos[u]
                    neg[x] += neg[u]
                else:
                    neg[x] += pos[u]
                    pos[x] += neg[u]
    return pos, neg, dist


def sp_sign_counts(graph: SignedGraph, q: int) -> PathCounts:
    """Count positive and negative shortest paths from q to every node.

    One FIFO BFS over the CSR adjacency; reaching x from u along a shortest
    path carries the (pos, neg) counts over on a positive edge and swaps
    them on a negative edge. Each edge is relaxed at most twice.
    """
    if not (0 <= q < graph.n):
        raise ValueError(f"unknown node id {q}")
    indptr, nbrs, signs = _csr_arrays(graph)
    pos, neg, dist = _bfs_sign_counts(indptr, nbrs, signs, graph.n, q)
    return PathCounts(q, pos, neg, dist)


class CompatibilityRelation:
    """Symmetric reflexive pair set with a distance per compatible pair.

    Distinct compatible pairs carry a distance >= 1; (u, u) is always a
    member at distance 0. ``unknown`` holds pairs whose SBP status could not
    be decided within the search budget; they are treated as incompatible by
    queries but reported separately.
    """

    __slots__ = ("kind", "n", "_dist", "unknown")

    def __init__(self, kind: RelationKind, n: int,
                 dist: list[dict[int, int]],
                 unknown: frozenset[tuple[int, int]] = frozenset()):
        self.kind = kind
        self.n = n
        self._dist = dist
        self.unknown = unknown

    def compatible(self, u: int, v: int) -> bool:
        return u == v or v in self._dist[u]

    def distance(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._dist[u][v]

    def partners(self, u: int) -> dict[int, int]:
        """Distance map of nodes compatible with u (u itself excluded)."""
        return self._dist[u]

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """(u, v, distance) over distinct compatible pairs, u < v."""
        for u in range(self.n):
            for v, d in sorted(self._dist[u].items()):
                if u < v:
                    yield u, v, d

    def pair_count(self) -> int:
        return sum(len(d) for d in self._dist) // 2

    def __repr__(self) -> str:
        return f"CompatibilityRelation({self.kind}, n={self.n}, pairs={self.pair_count()})"


def sbp_exact_reachability(graph: SignedGraph, u: int, budget: int,
                           ) -> tuple[dict[int, int], bool]:
    """Shortest positive structurally balanced path lengths from u.

    Exhaustive DFS over simple paths of at most ``budget`` edges. Unbalanced
    prefixes are pruned: adding nodes to an unbalanced induced subgraph can
    never restore balance. Returns ({node: length}, truncated) where
    truncated means some admissible path hit the budget, so missing nodes
    are "unknown" rather than proven unreachable.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    best: dict[int, int] = {u: 0}
    truncated = False
    path = [u]
    on_path = {u}

    def extend(node: int, sign: int) -> None:
        nonlocal truncated
        depth = len(path) - 1
        if depth == budget:
            if any(w not in on_path for w, _ in graph.neighbors(node)):
                truncated = True
            return
        for w, es in graph.neighbors(node):
            if w in on_path:
                continue
            if not is_balanced_node_set(graph, on_path | {w}):
                continue
            new_sign = sign * es
            path.append(w)
            on_path.add(w)
            if new_sign == 1 and (w not in best or depth + 1 < best[w]):
                best[w] = depth + 1
            extend(w, new_sign)
            on_path.discard(w)
            path.pop()

    extend(u, 1)
    best.pop(u, None)
    return best, truncated


def sbp_heuristic_counts(graph: SignedGraph, q: int) -> dict[int, int]:
    """Prefix-property heuristic for positive balanced path lengths from q.

    Layered expansion keeping at most one representative balanced path per
    (node, sign): the shortest discovered, first-found winning ties. Only
    representatives are extended, and an extension survives only if the
    extended path's induced subgraph stays balanced. Sound but incomplete
    with respect to sbp_exact_reachability.
    """
    if not (0 <= q < graph.n):
        raise ValueError(f"unknown node id {q}")
    reps: dict[tuple[int, int], list[int]] = {(q, 1): [q]}
    best_pos: dict[int, int] = {}
    frontier = [(q, 1)]
    while frontier:
        nxt = []
        for node, sign in frontier:
            rep = reps[(node, sign)]
            for w, es in graph.neighbors(node):
                if w in rep:
                    continue
                new_sign = sign * es
                if (w, new_sign) in reps:
                    continue
                extended = rep + [w]
                if not is_balanced_node_set(graph, extended):
                    continue
                reps[(w, new_sign)] = extended
                nxt.append((w, new_sign))
                if new_sign == 1:
                    best_pos.setdefault(w, len(extended) - 1)
        frontier = nxt
    best_pos.pop(q, None)
    return best_pos


def _sp_membership(kind: RelationKind, counts: PathCounts) -> np.ndarray:
    pos, neg, dist = counts.pos, counts.neg, counts.dist
    reach = dist > 0
    if kind is RelationKind.SPA:
        return reach & (neg == 0) & (pos >= 1)
    if kind is RelationKind.SPM:
        return reach & (pos >= neg) & (pos >= 1)
    if kind is RelationKind.SPO:
        return reach & (pos >= 1)
    raise ValueError(f"not an SP kind: {kind}")


def build_relation(graph: SignedGraph, kind: RelationKind, *,
                   sbp_budget: Optional[int] = None,
                   sbp_max_nodes: int = 500) -> CompatibilityRelation:
    """Compute the full pairwise relation of the given kind.

    Distances: DPE -> 1; SPA/SPM/SPO -> shortest-path length; NNE ->
    shortest-path length ignoring signs; SBP/SBPH -> length of the shortest
    positive structurally balanced path found.

    SBP runs an exponential exact search and refuses graphs larger than
    sbp_max_nodes; its path-length budget defaults to diameter + 2.
    """
    n = graph.n
    dist: list[dict[int, int]] = [dict() for _ in range(n)]
    unknown: set[tuple[int, int]] = set()

    if kind is RelationKind.DPE:
        for u, v, s in graph.edges:
            if s == 1:
                dist[u][v] = 1
                dist[v][u] = 1
    elif kind in (RelationKind.SPA, RelationKind.SPM, RelationKind.SPO):
        for q in range(n):
            counts = sp_sign_counts(graph, q)
            for v in np.nonzero(_sp_membership(kind, counts))[0]:
                dist[q][int(v)] = int(counts.dist[v])
    elif kind is RelationKind.NNE:
        for q in range(n):
            d = graph.bfs_distances(q)
            neg_nbrs = {v for v, s in graph.neighbors(q) if s == -1}
            for v in range(n):
                if v != q and d[v] > 0 and v not in neg_nbrs:
                    dist[q][v] = d[v]
    elif kind is RelationKind.SBP:
        if n > sbp_max_nodes:
            raise SbpBudgetError(
                f"exact SBP refused for n={n} > {sbp_max_nodes} nodes")
        budget = sbp_budget if sbp_budget is not None else graph.diameter() + 2
        exhaustive = budget >= n - 1
        for q in range(n):
            best, truncated = sbp_exact_reachability(graph, q, budget)
            for v, d in best.items():
                dist[q][v] = d
            if truncated and not exhaustive:
                for v in range(n):
                    if v != q and v not in best:
                        unknown.add((min(q, v), max(q, v)))
    elif kind is RelationKind.SBPH:
        for q in range(n):
            for v, d in sbp_heuristic_counts(graph, q).items():
                dist[q][v] = d
    else:
        raise ValueError(f"unknown relation kind: {kind}")

    # Distances found by independent per-source searches must agree; for the
    # symmetric search kinds keep the smaller of the two directions.
    if kind in (RelationKind.SBP, RelationKind.SBPH):
        for u in range(n):
            for v in list(dist[u]):
                back = dist[v].get(u)
                d = dist[u][v] if back is None else min(dist[u][v], back)
                dist[u][v] = d
                dist[v][u] = d
        unknown = {(u, v) for u, v in unknown if v not in dist[u]}

    relation = CompatibilityRelation(kind, n, dist, frozenset(unknown))
    _check_edge_properties(graph, relation)
    return relation


def _check_edge_properties(graph: SignedGraph, relation: CompatibilityRelation) -> None:
    """Positive edge endpoints must be members, negative ones must not be."""
    for u, v, s in graph.edges:
        if s == 1 and not relation.compatible(u, v):
            raise AssertionError(
                f"{relation.kind}: positive edge ({u},{v}) not compatible")
        if s == -1 and relation.compatible(u, v):
            raise AssertionError(
                f"{relation.kind}: negative edge ({u},{v}) marked compatible")


# -- skill compatibility degrees ------------------------------------------

def skill_pair_degree(relation: CompatibilityRelation, skills: SkillAssignment,
                      s1: str, s2: str) -> int:
    """Number of compatible (u, v) with s1 in skills(u) and s2 in skills(v).

    A single user holding both skills contributes through the reflexive
    pair (u, u).
    """
    total = 0
    for u in skills.holders(s1):
        for v in skills.holders(s2):
            if relation.compatible(u, v):
                total += 1
    return total


def skill_compat_degree(relation: CompatibilityRelation, skills: SkillAssignment,
                        s: str) -> int:
    """Compatibility degree of skill s: sum of skill_pair_degree(s, t), t != s."""
    if s not in skills.users_with:
        raise KeyError(f"unknown skill {s!r}")
    return sum(skill_pair_degree(relation, skills, s, t)
               for t in skills.users_with if t != s)


def skill_degrees(relation: CompatibilityRelation, skills: SkillAssignment,
                  ) -> dict[str, int]:
    """All cd(s) at once, by iterating compatible ordered pairs."""
    cd = {s: 0 for s in skills.users_with}
    for u in range(relation.n):
        partners = list(relation.partners(u)) + [u]
        su = skills.skills_of[u]
        if not su:
            continue
        for v in partners:
            sv = skills.skills_of[v]
            for s in su:
                hits = len(sv) - (1 if s in sv else 0)
                cd[s] += hits
    return cd
