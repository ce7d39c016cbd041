"""Greedy team formation over a compatibility relation, plus unsigned baseline."""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass
from typing import Optional

from .compat import CompatibilityRelation, skill_degrees
from .graph import SignedGraph, SkillAssignment, Task


class SkillPolicy(enum.Enum):
    RAREST_FIRST = "RAREST_FIRST"
    LEAST_COMPATIBLE_FIRST = "LEAST_COMPATIBLE_FIRST"


class UserPolicy(enum.Enum):
    MIN_DISTANCE = "MIN_DISTANCE"
    MOST_COMPATIBLE = "MOST_COMPATIBLE"
    RANDOM = "RANDOM"


class TransformMode(enum.Enum):
    IGNORE_SIGN = "IGNORE_SIGN"
    DELETE_NEGATIVE = "DELETE_NEGATIVE"


class IncompatibleTeamError(ValueError):
    """A cost was requested for a member set containing an incompatible pair."""


@dataclass(frozen=True)
class PolicyConfig:
    skill_policy: SkillPolicy = SkillPolicy.LEAST_COMPATIBLE_FIRST
    user_policy: UserPolicy = UserPolicy.MIN_DISTANCE
    seed: Optional[int] = None
    # "max" minimizes the resulting team diameter; "sum" minimizes the sum
    # of distances to current members instead.
    distance_aggregate: str = "max"

    def __post_init__(self):
        if self.user_policy is UserPolicy.RANDOM and self.seed is None:
            raise ValueError("RANDOM user policy requires a seed")
        if self.distance_aggregate not in ("max", "sum"):
            raise ValueError("distance_aggregate must be 'max' or 'sum'")


@dataclass(frozen=True)
class Team:
    members: frozenset[int]
    covered: frozenset[str]
    cost: int

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class FormationResult:
    """Outcome of form_team; reason is set only when team is None."""

    team: Optional[Team]
    reason: Optional[str] = None  # "missing-skill" | "no-compatible-team"


def derive_rng(seed: int, *keys) -> random.Random:
    """Deterministic sub-generator keyed by (seed, keys)."""
    digest = hashlib.sha256(repr((seed,) + keys).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def team_cost(relation: CompatibilityRelation, members) -> int:
    """Max pairwise relation distance; 0 for empty or singleton sets."""
    members = sorted(members)
    cost = 0
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if not relation.compatible(u, v):
                raise IncompatibleTeamError(f"({u},{v}) not compatible")
            cost = max(cost, relation.distance(u, v))
    return cost


def select_skill(uncovered: frozenset[str], skills: SkillAssignment,
                 relation: CompatibilityRelation, policy: SkillPolicy,
                 cd: Optional[dict[str, int]] = None) -> str:
    """Pick the next skill to cover; ties broken by lowest skill id."""
    if not uncovered:
        raise ValueError("no uncovered skills to select from")
    if policy is SkillPolicy.RAREST_FIRST:
        return min(uncovered, key=lambda s: (len(skills.holders(s)), s))
    if cd is None:
        cd = skill_degrees(relation, skills)
    return min(uncovered, key=lambda s: (cd.get(s, 0), s))


def select_user(candidates, team_members, relation: CompatibilityRelation,
                policy: UserPolicy, *, skills: SkillAssignment,
                uncovered: frozenset[str] = frozenset(),
                rng: Optional[random.Random] = None,
                distance_aggregate: str = "max") -> Optional[int]:
    """Pick a candidate compatible with every current member, or None.

    MIN_DISTANCE greedily minimizes the team cost the pick would produce,
    MOST_COMPATIBLE maximizes compatibility with users still holding
    uncovered skills, RANDOM picks uniformly with the supplied rng.
    """
    feasible = sorted(v for v in candidates
                      if all(relation.compatible(v, x) for x in team_members))
    if not feasible:
        return None
    if policy is UserPolicy.RANDOM:
        return rng.choice(feasible)
    if policy is UserPolicy.MIN_DISTANCE:
        def key(v):
            dists = [relation.distance(v, x) for x in team_members if x != v]
            agg = (max(dists) if distance_aggregate == "max" else sum(dists)) if dists else 0
            return (agg, v)
        return min(feasible, key=key)
    # MOST_COMPATIBLE: count compatible users among holders of the skills
    # that would still be uncovered after adding the candidate.
    def key(v):
        remaining = uncovered - skills.skills_of[v]
        pool = set()
        for s in remaining:
            pool |= skills.holders(s)
        pool.discard(v)
        return (-sum(1 for w in pool if relation.compatible(v, w)), v)
    return min(feasible, key=key)


def _validate_team(relation, skills, task, team: Team) -> None:
    held = frozenset().union(*(skills.skills_of[u] for u in team.members))
    assert task.required <= held, "returned team does not cover the task"
    assert team.covered == task.required & held
    assert team.cost == team_cost(relation, team.members)


def form_team(graph: SignedGraph, relation: CompatibilityRelation,
              skills: SkillAssignment, task: Task,
              config: PolicyConfig = PolicyConfig()) -> FormationResult:
    """Greedy candidate-list team formation.

    One candidate team is grown per holder of the first selected skill:
    repeatedly choose the next uncovered skill by the skill policy and a
    holder compatible with all current members by the user policy. A
    candidate that dead-ends is abandoned (no backtracking). The cheapest
    completed candidate wins; ties break on the sorted member tuple.
    """
    for s in sorted(task.required):
        if not skills.holders(s):
            return FormationResult(None, "missing-skill")

    cd = (skill_degrees(relation, skills)
          if config.skill_policy is SkillPolicy.LEAST_COMPATIBLE_FIRST else None)
    first = select_skill(task.required, skills, relation, config.skill_policy, cd)

    candidates: list[tuple[int, tuple[int, ...], Team]] = []
    for seed_user in sorted(skills.holders(first)):
        members = {seed_user}
        covered = task.required & skills.skills_of[seed_user]
        rng = (derive_rng(config.seed, "form_team", seed_user)
               if config.user_policy is UserPolicy.RANDOM else None)
        dead = False
        while covered != task.required:
            uncovered = task.required - covered
            s = select_skill(uncovered, skills, relation, config.skill_policy, cd)
            pick = select_user(skills.holders(s) - members, members, relation,
                               config.user_policy, skills=skills,
                               uncovered=uncovered, rng=rng,
                               distance_aggregate=config.distance_aggregate)
            if pick is None:
                dead = True
                break
            members.add(pick)
            covered |= task.required & skills.skills_of[pick]
        if not dead:
            team = Team(frozenset(members), covered, team_cost(relation, members))
            candidates.append((team.cost, team.sorted_members(), team))

    if not candidates:
        return FormationResult(None, "no-compatible-team")
    best = min(candidates)[2]
    _validate_team(relation, skills, task, best)
    return FormationResult(best)


# -- unsigned baseline -----------------------------------------------------

def unsigned_transform(graph: SignedGraph, mode: TransformMode) -> SignedGraph:
    """Strip sign information for baseline comparisons.

    IGNORE_SIGN relabels every edge +1; DELETE_NEGATIVE drops negative
    edges (the result may be disconnected).
    """
    if mode is TransformMode.IGNORE_SIGN:
        edges = [(u, v, 1) for u, v, _ in graph.edges]
    else:
        edges = [(u, v, s) for u, v, s in graph.edges if s == 1]
    return SignedGraph(graph.n, edges, graph.labels)


def rarest_first_unsigned(graph: SignedGraph, skills: SkillAssignment,
                          task: Task) -> Optional[Team]:
    """Sign-blind greedy baseline: rarest-skill anchor, nearest holders.

    For each holder of the rarest required skill, attach the closest holder
    of every other required skill (hop distance, ignoring signs); returns
    the candidate with the smallest diameter. None when some skill has no
    reachable holder.
    """
    for s in sorted(task.required):
        if not skills.holders(s):
            return None
    rarest = min(sorted(task.required),
                 key=lambda s: (len(skills.holders(s)), s))
    best: Optional[tuple[int, tuple[int, ...], frozenset[int]]] = None
    for anchor in sorted(skills.holders(rarest)):
        d = graph.bfs_distances(anchor)
        members = {anchor}
        covered = task.required & skills.skills_of[anchor]
        ok = True
        for s in sorted(task.required - covered):
            reachable = [v for v in sorted(skills.holders(s)) if d[v] >= 0]
            if not reachable:
                ok = False
                break
            members.add(min(reachable, key=lambda v: (d[v], v)))
        if not ok:
            continue
        cost = _unsigned_diameter(graph, members)
        if cost is None:
            continue
        entry = (cost, tuple(sorted(members)), frozenset(members))
        if best is None or entry < best:
            best = entry
    if best is None:
        return None
    cost, _, members = best
    held = frozenset().union(*(skills.skills_of[u] for u in members))
    return Team(members, task.required & held, cost)


def _unsigned_diameter(graph: SignedGraph, members) -> Optional[int]:
    members = sorted(members)
    cost = 0
    for u in members:
        d = graph.bfs_distances(u)
        for v in members:
            if v > u:
                if d[v] < 0:
                    return None
                cost = max(cost, d[v])
    return cost


def team_is_compatible(relation: CompatibilityRelation, members) -> bool:
    members = sorted(members)
    return all(relation.compatible(u, v)
               for i, u in enumerate(members) for v in members[i + 1:])
