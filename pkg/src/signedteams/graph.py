"""Immutable signed graph and skill data, plus text-file loaders."""

from __future__ import annotations

import warnings
from collections import deque
from typing import Iterable, Mapping, Optional, Sequence


class GraphFormatError(ValueError):
    """A graph or skills file could not be parsed."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ConflictingSignError(GraphFormatError):
    """The same node pair appears with both a positive and a negative sign."""


class DisconnectedGraphError(ValueError):
    """The loaded graph is not connected and no override was given."""


class UnknownNodeError(ValueError):
    """A skills file references a node label not present in the graph."""


class SignedGraph:
    """Undirected graph with +1/-1 edge signs.

    Nodes are dense integers 0..n-1; the original file labels are kept in
    ``labels``. Instances are immutable after construction and safe to share
    across threads or forked workers.
    """

    __slots__ = ("n", "edges", "labels", "_label_index", "_adj", "_sign", "_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]],
                 labels: Optional[Sequence[str]] = None):
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("labels length must equal node count")
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_index) != n:
            raise ValueError("duplicate node labels")

        sign: dict[tuple[int, int], int] = {}
        for u, v, s in edges:
            if s not in (1, -1):
                raise ValueError(f"edge sign must be +1 or -1, got {s}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            a, b = (u, v) if u < v else (v, u)
            prev = sign.get((a, b))
            if prev is not None and prev != s:
                raise ConflictingSignError(f"conflicting signs for pair ({a},{b})")
            sign[(a, b)] = s
        self.edges = tuple(sorted((u, v, s) for (u, v), s in sign.items()))
        self._sign = sign

        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, s in self.edges:
            adj[u].append((v, s))
            adj[v].append((u, s))
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._cache: dict = {}

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> tuple[tuple[int, int], ...]:
        """Sorted (neighbor, sign) pairs of u."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def edge_sign(self, u: int, v: int) -> Optional[int]:
        """+1/-1 if the edge exists, else None."""
        if u > v:
            u, v = v, u
        return self._sign.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_sign(u, v) is not None

    def index(self, label: str) -> int:
        return self._label_index[label]

    def label(self, u: int) -> str:
        return self.labels[u]

    def negative_edge_count(self) -> int:
        return sum(1 for _, _, s in self.edges if s == -1)

    # -- traversal helpers ------------------------------------------------

    def bfs_distances(self, source: int) -> list[int]:
        """Unsigned hop distances from source; -1 for unreachable nodes."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v, _ in self._adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d >= 0 for d in self.bfs_distances(0))

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v, _ in self._adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(comp)
        return comps

    def diameter(self) -> int:
        """Max finite eccentricity; cached. Intended for small graphs."""
        if "diameter" not in self._cache:
            best = 0
            for s in range(self.n):
                best = max(best, max(self.bfs_distances(s)))
            self._cache["diameter"] = best
        return self._cache["diameter"]

    def subgraph(self, nodes: Sequence[int]) -> "SignedGraph":
        """Induced subgraph; nodes are re-indexed, labels carried over."""
        keep = sorted(set(nodes))
        remap = {old: new for new, old in enumerate(keep)}
        edges = [(remap[u], remap[v], s) for u, v, s in self.edges
                 if u in remap and v in remap]
        return SignedGraph(len(keep), edges, [self.labels[i] for i in keep])

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m={self.m}, neg={self.negative_edge_count()})"


class SkillAssignment:
    """Per-node skill sets plus the inverted skill -> holders index."""

    __slots__ = ("skills_of", "users_with")

    def __init__(self, n: int, skills_of: Mapping[int, Iterable[str]]):
        per_node: list[frozenset[str]] = [frozenset()] * n
        for u, sk in skills_of.items():
            if not (0 <= u < n):
                raise UnknownNodeError(f"node id {u} out of range")
            per_node[u] = frozenset(sk)
        self.skills_of = tuple(per_node)
        inv: dict[str, set[int]] = {}
        for u, sk in enumerate(self.skills_of):
            for s in sk:
                inv.setdefault(s, set()).add(u)
        self.users_with = {s: frozenset(us) for s, us in inv.items()}

    @property
    def universe(self) -> frozenset[str]:
        return frozenset(self.users_with)

    @property
    def universe_size(self) -> int:
        return len(self.users_with)

    def holders(self, skill: str) -> frozenset[int]:
        return self.users_with.get(skill, frozenset())

    def __repr__(self) -> str:
        return f"SkillAssignment(users={len(self.skills_of)}, skills={self.universe_size})"


class Task:
    """Nonempty set of required skill ids."""

    __slots__ = ("required",)

    def __init__(self, required: Iterable[str], skills: Optional[SkillAssignment] = None):
        self.required = frozenset(required)
        if not self.required:
            raise ValueError("task must require at least one skill")
        if skills is not None:
            missing = self.required - skills.universe
            if missing:
                raise ValueError(f"task requires unknown skills: {sorted(missing)}")

    def __repr__(self) -> str:
        return f"Task({sorted(self.required)})"


# -- file I/O -------------------------------------------------------------

_SIGN_TOKENS = {"+1": 1, "1": 1, "+": 1, "-1": -1, "-": -1}


def _data_lines(path: str):
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield line_no, line


def load_graph(path: str, largest_component: bool = False) -> SignedGraph:
    """Read a `u v sign` edge list into a validated SignedGraph.

    Rejects disconnected inputs unless largest_component=True, in which case
    the largest connected component is kept (with a re-indexed node set).
    """
    labels: dict[str, int] = {}
    sign: dict[tuple[int, int], int] = {}
    for line_no, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 'u v sign', got {line!r}", line_no)
        ul, vl, st = parts
        if st not in _SIGN_TOKENS:
            raise GraphFormatError(f"bad sign token {st!r}", line_no)
        s = _SIGN_TOKENS[st]
        if ul == vl:
            raise GraphFormatError(f"self-loop at {ul!r}", line_no)
        u = labels.setdefault(ul, len(labels))
        v = labels.setdefault(vl, len(labels))
        a, b = (u, v) if u < v else (v, u)
        prev = sign.get((a, b))
        if prev is not None:
            if prev != s:
                raise ConflictingSignError(
                    f"pair ({ul},{vl}) already has sign {prev:+d}", line_no)
            warnings.warn(f"{path}:{line_no}: duplicate edge ({ul},{vl}) ignored",
                          stacklevel=2)
        sign[(a, b)] = s

    ordered = sorted(labels, key=labels.get)
    graph = SignedGraph(len(labels), [(u, v, s) for (u, v), s in sign.items()], ordered)
    if graph.n and not graph.is_connected():
        if not largest_component:
            raise DisconnectedGraphError(
                f"{path}: graph has {len(graph.connected_components())} components; "
                "pass largest_component=True to keep the largest one")
        biggest = max(graph.connected_components(), key=lambda c: (len(c), -min(c)))
        graph = graph.subgraph(biggest)
    return graph


def save_graph(graph: SignedGraph, path: str) -> None:
    """Write the graph back out in the `u v sign` format load_graph reads."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, s in graph.edges:
            fh.write(f"{graph.labels[u]} {graph.labels[v]} {s:+d}\n")


def load_skills(path: str, graph: SignedGraph) -> SkillAssignment:
    """Read a `u skill...` file; nodes absent from the file get empty sets."""
    per_node: dict[int, set[str]] = {}
    for line_no, line in _data_lines(path):
        parts = line.split()
        label, skills = parts[0], parts[1:]
        try:
            u = graph.index(label)
        except KeyError:
            raise UnknownNodeError(
                f"line {line_no}: unknown node label {label!r}") from None
        per_node.setdefault(u, set()).update(skills)
    assignment = SkillAssignment(graph.n, per_node)
    if assignment.universe_size == 0:
        raise GraphFormatError(f"{path}: no skills found")
    return assignment


def save_skills(skills: SkillAssignment, graph: SignedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, sk in enumerate(skills.skills_of):
            if sk:
                fh.write(graph.labels[u] + " " + " ".join(sorted(sk)) + "\n")
