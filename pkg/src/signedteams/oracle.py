"""Brute-force reference implementations for desk-scale validation.

Everything here decides membership by explicit path or subset enumeration
and shares no traversal code with the fast engine, so the two sides can
check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .compat import CompatibilityRelation, RelationKind
from .graph import SignedGraph, SkillAssignment, Task
from .teams import Team


class BudgetExceededError(ValueError):
    """Input is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 14
    max_path_len: int = 14
    max_team_size: int = 5


DEFAULT_BUDGET = OracleBudget()


def _check_nodes(graph: SignedGraph, budget: OracleBudget) -> None:
    if graph.n > budget.max_nodes:
        raise BudgetExceededError(f"graph has {graph.n} nodes > {budget.max_nodes}")


def enumerate_simple_paths(graph: SignedGraph, u: int, v: int,
                           max_len: int) -> list[list[int]]:
    """All simple u-v paths with at most max_len edges, by DFS."""
    out: list[list[int]] = []
    path = [u]
    seen = {u}

    def walk(node: int) -> None:
        if node == v:
            out.append(list(path))
            return
        if len(path) - 1 == max_len:
            return
        for w, _ in graph.neighbors(node):
            if w not in seen:
                path.append(w)
                seen.add(w)
                walk(w)
                seen.discard(w)
                path.pop()

    walk(u)
    return out


def enumerate_shortest_paths(graph: SignedGraph, u: int, v: int,
                             budget: OracleBudget = DEFAULT_BUDGET) -> list[list[int]]:
    """All shortest u-v paths; empty list when v is unreachable.

    Iterative-deepening DFS: at the first depth cap where any path appears,
    every discovered path has exactly that length (shorter ones would have
    surfaced under a smaller cap).
    """
    _check_nodes(graph, budget)
    if u == v:
        return [[u]]
    for cap in range(1, graph.n):
        paths = enumerate_simple_paths(graph, u, v, cap)
        if paths:
            return paths
    return []


def oracle_path_sign(graph: SignedGraph, path: list[int]) -> int:
    sign = 1
    for a, b in zip(path, path[1:]):
        sign *= graph.edge_sign(a, b)
    return sign


def oracle_is_balanced(graph: SignedGraph, nodes) -> bool:
    """Balance by enumerating every simple cycle of the induced subgraph."""
    node_set = sorted(set(nodes))
    allowed = set(node_set)

    def cycles_from(start: int):
        # Only cycles whose minimum node is `start`, to avoid duplicates.
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for w, _ in graph.neighbors(node):
                if w not in allowed or w < start:
                    continue
                if w == start and len(path) >= 3:
                    yield path
                elif w not in path:
                    stack.append((w, path + [w]))

    for start in node_set:
        for cycle in cycles_from(start):
            closed = cycle + [start]
            negatives = sum(1 for a, b in zip(closed, closed[1:])
                            if graph.edge_sign(a, b) == -1)
            if negatives % 2 == 1:
                return False
    return True


def oracle_relation(graph: SignedGraph, kind: RelationKind,
                    budget: OracleBudget = DEFAULT_BUDGET) -> CompatibilityRelation:
    """Ground-truth relation by explicit enumeration."""
    _check_nodes(graph, budget)
    n = graph.n
    dist: list[dict[int, int]] = [dict() for _ in range(n)]

    for u in range(n):
        for v in range(u + 1, n):
            d = _oracle_pair(graph, u, v, kind, budget)
            if d is not None:
                dist[u][v] = d
                dist[v][u] = d
    return CompatibilityRelation(kind, n, dist)


def _oracle_pair(graph: SignedGraph, u: int, v: int, kind: RelationKind,
                 budget: OracleBudget) -> Optional[int]:
    edge = graph.edge_sign(u, v)
    if kind is RelationKind.DPE:
        return 1 if edge == 1 else None
    if kind is RelationKind.NNE:
        if edge == -1:
            return None
        sp = enumerate_shortest_paths(graph, u, v, budget)
        return len(sp[0]) - 1 if sp else None
    if kind in (RelationKind.SPA, RelationKind.SPM, RelationKind.SPO):
        sp = enumerate_shortest_paths(graph, u, v, budget)
        if not sp:
            return None
        signs = [oracle_path_sign(graph, p) for p in sp]
        pos = signs.count(1)
        neg = signs.count(-1)
        ok = {RelationKind.SPA: pos >= 1 and neg == 0,
              RelationKind.SPM: pos >= neg and pos >= 1,
              RelationKind.SPO: pos >= 1}[kind]
        return len(sp[0]) - 1 if ok else None
    if kind is RelationKind.SBP:
        best = None
        for path in enumerate_simple_paths(graph, u, v, budget.max_path_len):
            if oracle_path_sign(graph, path) != 1:
                continue
            if not oracle_is_balanced(graph, path):
                continue
            length = len(path) - 1
            if best is None or length < best:
                best = length
        return best
    raise ValueError(f"no oracle for kind {kind}")


def oracle_min_cost_team(graph: SignedGraph, relation: CompatibilityRelation,
                         skills: SkillAssignment, task: Task,
                         budget: OracleBudget = DEFAULT_BUDGET) -> Optional[Team]:
    """Exhaustive minimum-diameter compatible covering team.

    Subsets are capped at |task| members: a minimal covering team never
    needs more than one member per required skill.
    """
    if len(task.required) > budget.max_team_size:
        raise BudgetExceededError(
            f"task has {len(task.required)} skills > {budget.max_team_size}")
    pool = sorted(set().union(*(skills.holders(s) for s in sorted(task.required))))
    best: Optional[tuple[int, tuple[int, ...]]] = None
    for size in range(1, min(len(task.required), len(pool)) + 1):
        for members in combinations(pool, size):
            held = frozenset().union(*(skills.skills_of[u] for u in members))
            if not task.required <= held:
                continue
            ok = True
            cost = 0
            for a, b in combinations(members, 2):
                if not relation.compatible(a, b):
                    ok = False
                    break
                cost = max(cost, relation.distance(a, b))
            if ok and (best is None or (cost, members) < best):
                best = (cost, members)
    if best is None:
        return None
    cost, members = best
    held = frozenset().union(*(skills.skills_of[u] for u in members))
    return Team(frozenset(members), task.required & held, cost)
