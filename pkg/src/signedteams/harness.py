"""Synthetic data generation and the experiment pipelines behind the CLI."""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .compat import (CompatibilityRelation, RelationKind, _sp_membership,
                     build_relation, skill_pair_degree, sp_sign_counts)
from .graph import SignedGraph, SkillAssignment, Task
from .teams import (PolicyConfig, SkillPolicy, TransformMode, UserPolicy,
                    derive_rng, form_team, rarest_first_unsigned,
                    team_is_compatible, unsigned_transform)

SP_KINDS = (RelationKind.SPA, RelationKind.SPM, RelationKind.SPO)

#: Named policy combinations reported by the experiment pipeline. LCMD/LCMC
#: pair least-compatible-first skill selection with min-distance and
#: most-compatible user selection; RANDOM picks any compatible user.
POLICY_PRESETS: dict[str, tuple[SkillPolicy, UserPolicy]] = {
    "LCMD": (SkillPolicy.LEAST_COMPATIBLE_FIRST, UserPolicy.MIN_DISTANCE),
    "LCMC": (SkillPolicy.LEAST_COMPATIBLE_FIRST, UserPolicy.MOST_COMPATIBLE),
    "RFMD": (SkillPolicy.RAREST_FIRST, UserPolicy.MIN_DISTANCE),
    "RFMC": (SkillPolicy.RAREST_FIRST, UserPolicy.MOST_COMPATIBLE),
    "RANDOM": (SkillPolicy.LEAST_COMPATIBLE_FIRST, UserPolicy.RANDOM),
}
DEFAULT_POLICIES = ("LCMD", "LCMC", "RANDOM")


# -- synthetic data --------------------------------------------------------

def random_connected_signed_graph(n: int, p_edge: float, neg_fraction: float,
                                  seed: int) -> SignedGraph:
    """Erdos-Renyi edges plus a random spanning chain, signs drawn i.i.d."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    pairs = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    if n > 1 and p_edge > 0:
        target = max(int(p_edge * n * (n - 1) / 2), n - 1)
        us = rng.integers(0, n, size=3 * target + 8)
        vs = rng.integers(0, n, size=3 * target + 8)
        for a, b in zip(us.tolist(), vs.tolist()):
            if len(pairs) >= target:
                break
            if a != b:
                pairs.add((min(a, b), max(a, b)))
    pairs = sorted(pairs)
    signs = rng.random(len(pairs)) < neg_fraction
    edges = [(u, v, -1 if neg else 1) for (u, v), neg in zip(pairs, signs)]
    return SignedGraph(n, edges)


def generate_zipf_skills(n_users: int, n_skills: int, exponent: float, seed: int,
                         mean_skills_per_user: float = 3.0) -> SkillAssignment:
    """Skill frequencies follow rank^(-exponent); every occurrence lands on a
    uniformly random user. Per-user counts are geometric with the given mean,
    controlling only the total number of occurrences."""
    if n_skills < 1:
        raise ValueError("need at least one skill")
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    rng = np.random.default_rng(seed)
    per_user = rng.geometric(1.0 / max(mean_skills_per_user, 1.0), size=n_users)
    total = int(per_user.sum())
    weights = np.arange(1, n_skills + 1, dtype=float) ** (-exponent)
    weights /= weights.sum()
    skill_draws = rng.choice(n_skills, size=total, p=weights)
    user_draws = rng.integers(0, n_users, size=total)
    per_node: dict[int, set[str]] = {}
    for u, s in zip(user_draws.tolist(), skill_draws.tolist()):
        per_node.setdefault(u, set()).add(f"s{s}")
    return SkillAssignment(n_users, per_node)


def sample_tasks(skills: SkillAssignment, k: int, count: int, seed: int,
                 ) -> list[Task]:
    """Seeded tasks of k distinct skills, drawn from skills with >= 1 holder."""
    held = sorted(s for s, us in skills.users_with.items() if us)
    if k > len(held):
        raise ValueError(f"cannot sample {k} skills from {len(held)} held ones")
    rng = derive_rng(seed, "tasks", k)
    return [Task(rng.sample(held, k)) for _ in range(count)]


# -- compatibility statistics ----------------------------------------------

@dataclass(frozen=True)
class CompatStatsRow:
    kind: RelationKind
    pct_users: float
    pct_skills: Optional[float]
    avg_dist: float
    unknown_pairs: int = 0


def _source_pair_stats(graph: SignedGraph, q: int,
                       kinds: Sequence[RelationKind]) -> list[tuple[int, int]]:
    """(pair count, distance sum) per kind, over targets v > q."""
    counts = sp_sign_counts(graph, q)
    above = np.arange(graph.n) > q
    out = []
    for kind in kinds:
        if kind in SP_KINDS:
            mask = above & _sp_membership(kind, counts)
        elif kind is RelationKind.NNE:
            mask = above & (counts.dist > 0)
            for v, s in graph.neighbors(q):
                if s == -1:
                    mask[v] = False
        elif kind is RelationKind.DPE:
            mask = np.zeros(graph.n, dtype=bool)
            for v, s in graph.neighbors(q):
                if s == 1 and v > q:
                    mask[v] = True
        else:
            raise ValueError(f"streaming stats do not support {kind}")
        n_pairs = int(mask.sum())
        if kind is RelationKind.DPE:
            dsum = n_pairs  # every DPE distance is 1
        else:
            dsum = int(counts.dist[mask].sum())
        out.append((n_pairs, dsum))
    return out


_WORKER_STATE: dict = {}


def _stats_worker_init(graph, kinds):
    _WORKER_STATE["graph"] = graph
    _WORKER_STATE["kinds"] = kinds


def _stats_worker(q: int):
    return _source_pair_stats(_WORKER_STATE["graph"], q, _WORKER_STATE["kinds"])


def streaming_pair_stats(graph: SignedGraph, kinds: Sequence[RelationKind],
                         workers: Optional[int] = None,
                         ) -> dict[RelationKind, tuple[int, int]]:
    """All-pairs (compatible pair count, distance sum) per kind without
    materializing the relation; parallel over source nodes."""
    totals = {kind: [0, 0] for kind in kinds}
    workers = workers or 1
    if workers > 1 and graph.n > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers, initializer=_stats_worker_init,
                      initargs=(graph, tuple(kinds))) as pool:
            results = pool.map(_stats_worker, range(graph.n),
                               chunksize=max(1, graph.n // (workers * 8)))
    else:
        results = (_source_pair_stats(graph, q, kinds) for q in range(graph.n))
    for per_kind in results:
        for kind, (cnt, dsum) in zip(kinds, per_kind):
            totals[kind][0] += cnt
            totals[kind][1] += dsum
    return {kind: (c, d) for kind, (c, d) in totals.items()}


def _skill_pair_pct(relation: CompatibilityRelation,
                    skills: SkillAssignment) -> Optional[float]:
    univ = sorted(skills.users_with)
    if len(univ) < 2:
        return None
    # Mark skill pairs from compatible user pairs (reflexive ones included),
    # rather than probing every skill pair directly.
    compat_skill_pairs: set[tuple[str, str]] = set()
    for u in range(relation.n):
        su = skills.skills_of[u]
        partner_nodes = list(relation.partners(u)) + [u]
        for v in partner_nodes:
            for s in su:
                for t in skills.skills_of[v]:
                    if s != t:
                        compat_skill_pairs.add((min(s, t), max(s, t)))
    total = len(univ) * (len(univ) - 1) // 2
    return 100.0 * len(compat_skill_pairs) / total


def run_compat_stats(graph: SignedGraph, kinds: Sequence[RelationKind],
                     skills: Optional[SkillAssignment] = None,
                     workers: Optional[int] = None,
                     sbp_budget: Optional[int] = None,
                     sbp_max_nodes: int = 500) -> list[CompatStatsRow]:
    """Per-kind % compatible user pairs, % compatible skill pairs and mean
    distance over compatible pairs (the Table-2-style summary)."""
    n = graph.n
    total_pairs = n * (n - 1) // 2
    rows: list[CompatStatsRow] = []
    stream_kinds = [k for k in kinds
                    if k in SP_KINDS or k in (RelationKind.NNE, RelationKind.DPE)]
    streamed = (streaming_pair_stats(graph, stream_kinds, workers)
                if stream_kinds and skills is None else {})
    for kind in kinds:
        unknown = 0
        if kind in streamed:
            cnt, dsum = streamed[kind]
            pct_skills = None
        else:
            relation = build_relation(graph, kind, sbp_budget=sbp_budget,
                                      sbp_max_nodes=sbp_max_nodes)
            cnt = relation.pair_count()
            dsum = sum(d for _, _, d in relation.pairs())
            unknown = len(relation.unknown)
            pct_skills = (_skill_pair_pct(relation, skills)
                          if skills is not None else None)
        pct_users = 100.0 * cnt / total_pairs if total_pairs else 0.0
        avg = dsum / cnt if cnt else 0.0
        rows.append(CompatStatsRow(kind, pct_users, pct_skills, avg, unknown))
    return rows


def stats_to_csv(rows: Sequence[CompatStatsRow]) -> str:
    lines = ["kind,pct_users,pct_skills,avg_dist"]
    for r in rows:
        skills = "" if r.pct_skills is None else f"{r.pct_skills:.2f}"
        lines.append(f"{r.kind},{r.pct_users:.2f},{skills},{r.avg_dist:.2f}")
    return "\n".join(lines) + "\n"


# -- team-formation experiments --------------------------------------------

@dataclass(frozen=True)
class TeamExperimentRow:
    kind: RelationKind
    k: int
    policy: str  # a POLICY_PRESETS name, or "MAX" for the upper bound
    solution_pct: float
    avg_cost: Optional[float]


@dataclass(frozen=True)
class ExperimentSpec:
    kinds: Sequence[RelationKind]
    task_sizes: Sequence[int]
    tasks_per_size: int
    seed: int
    policies: Sequence[str] = DEFAULT_POLICIES
    sbp_budget: Optional[int] = None

    def __post_init__(self):
        if self.tasks_per_size < 1:
            raise ValueError("tasks_per_size must be >= 1")
        bad = [p for p in self.policies if p not in POLICY_PRESETS]
        if bad:
            raise ValueError(f"unknown policies: {bad}")


def run_team_experiments(graph: SignedGraph, skills: SkillAssignment,
                         spec: ExperimentSpec) -> list[TeamExperimentRow]:
    """Solution rate and mean cost per (relation, task size, policy), plus a
    MAX row bounding the rate by pairwise skill compatibility. Tasks are
    shared across kinds and policies for paired comparison."""
    relations = {kind: build_relation(graph, kind, sbp_budget=spec.sbp_budget)
                 for kind in spec.kinds}
    rows: list[TeamExperimentRow] = []
    for k in spec.task_sizes:
        tasks = sample_tasks(skills, k, spec.tasks_per_size, spec.seed)
        for kind in spec.kinds:
            relation = relations[kind]
            for name in spec.policies:
                skill_pol, user_pol = POLICY_PRESETS[name]
                config = PolicyConfig(skill_pol, user_pol,
                                      seed=spec.seed if user_pol is UserPolicy.RANDOM else None)
                solved = []
                for task in tasks:
                    result = form_team(graph, relation, skills, task, config)
                    if result.team is not None:
                        solved.append(result.team.cost)
                pct = 100.0 * len(solved) / len(tasks)
                avg = sum(solved) / len(solved) if solved else None
                rows.append(TeamExperimentRow(kind, k, name, pct, avg))
            feasible = sum(1 for task in tasks
                           if _skills_pairwise_compatible(relation, skills, task))
            rows.append(TeamExperimentRow(
                kind, k, "MAX", 100.0 * feasible / len(tasks), None))
    return rows


def _skills_pairwise_compatible(relation, skills, task: Task) -> bool:
    req = sorted(task.required)
    for i, s in enumerate(req):
        for t in req[i + 1:]:
            if skill_pair_degree(relation, skills, s, t) == 0:
                return False
    return True


def experiments_to_csv(rows: Sequence[TeamExperimentRow]) -> str:
    lines = ["kind,k,policy,solution_pct,avg_cost"]
    for r in rows:
        cost = "" if r.avg_cost is None else f"{r.avg_cost:.3f}"
        lines.append(f"{r.kind},{r.k},{r.policy},{r.solution_pct:.2f},{cost}")
    return "\n".join(lines) + "\n"


# -- unsigned baseline comparison ------------------------------------------

@dataclass(frozen=True)
class BaselineRow:
    mode: TransformMode
    kind: RelationKind
    pct_compatible_teams: float
    teams_formed: int


def run_baseline_comparison(graph: SignedGraph, skills: SkillAssignment,
                            kinds: Sequence[RelationKind], k: int,
                            tasks_per_size: int, seed: int,
                            sbp_budget: Optional[int] = None) -> list[BaselineRow]:
    """Form sign-blind teams on both unsigned transforms and report what
    fraction of them is compatible under each relation of the signed graph."""
    tasks = sample_tasks(skills, k, tasks_per_size, seed)
    relations = {kind: build_relation(graph, kind, sbp_budget=sbp_budget)
                 for kind in kinds}
    rows: list[BaselineRow] = []
    for mode in (TransformMode.IGNORE_SIGN, TransformMode.DELETE_NEGATIVE):
        unsigned = unsigned_transform(graph, mode)
        teams = [t for t in (rarest_first_unsigned(unsigned, skills, task)
                             for task in tasks) if t is not None]
        for kind in kinds:
            relation = relations[kind]
            good = sum(1 for t in teams if team_is_compatible(relation, t.members))
            pct = 100.0 * good / len(teams) if teams else 0.0
            rows.append(BaselineRow(mode, kind, pct, len(teams)))
    return rows


def baseline_to_csv(rows: Sequence[BaselineRow]) -> str:
    lines = ["mode,kind,pct_compatible_teams,teams_formed"]
    for r in rows:
        lines.append(f"{r.mode.value},{r.kind},{r.pct_compatible_teams:.2f},"
                     f"{r.teams_formed}")
    return "\n".join(lines) + "\n"
