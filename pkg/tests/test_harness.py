import pytest

from signedteams import SignedGraph, SkillAssignment
from signedteams.compat import RelationKind, build_relation
from signedteams.harness import (CompatStatsRow, ExperimentSpec,
                                 baseline_to_csv, experiments_to_csv,
                                 generate_zipf_skills,
                                 random_connected_signed_graph,
                                 run_baseline_comparison, run_compat_stats,
                                 run_team_experiments, sample_tasks,
                                 stats_to_csv, streaming_pair_stats)

KINDS = (RelationKind.SPA, RelationKind.SPM, RelationKind.SPO, RelationKind.NNE)


def complete_positive(n):
    return SignedGraph(n, [(u, v, 1) for u in range(n) for v in range(u + 1, n)])


# -- generators ------------------------------------------------------------

def test_random_graph_is_connected_and_seeded():
    g1 = random_connected_signed_graph(40, 0.1, 0.3, seed=5)
    g2 = random_connected_signed_graph(40, 0.1, 0.3, seed=5)
    assert g1.is_connected()
    assert g1.edges == g2.edges
    assert 0 < g1.negative_edge_count() < g1.m


def test_zipf_single_skill():
    sk = generate_zipf_skills(10, 1, 1.0, seed=0)
    assert sk.universe == {"s0"}


def test_zipf_deterministic():
    a = generate_zipf_skills(50, 10, 1.2, seed=3)
    b = generate_zipf_skills(50, 10, 1.2, seed=3)
    assert a.skills_of == b.skills_of


def test_zipf_exponent_shapes_frequencies():
    steep = generate_zipf_skills(3000, 10, 2.0, seed=1)
    flat = generate_zipf_skills(3000, 10, 0.0, seed=1)

    def spread(sk):
        counts = sorted((len(us) for us in sk.users_with.values()), reverse=True)
        return counts[0] / max(counts[-1], 1)

    assert spread(steep) > 5 * spread(flat)
    # Near-zero exponent: frequencies within a factor of ~2 of each other.
    assert spread(flat) < 2.0


def test_sample_tasks_seeded_and_holder_restricted():
    sk = SkillAssignment(4, {0: {"a"}, 1: {"b"}, 2: {"c"}, 3: {"d"}})
    t1 = sample_tasks(sk, 2, 5, seed=7)
    t2 = sample_tasks(sk, 2, 5, seed=7)
    assert [t.required for t in t1] == [t.required for t in t2]
    for t in t1:
        assert len(t.required) == 2
        assert all(sk.holders(s) for s in t.required)
    with pytest.raises(ValueError):
        sample_tasks(sk, 9, 1, seed=0)


# -- compatibility statistics ----------------------------------------------

def test_complete_positive_graph_all_kinds_100_percent():
    g = complete_positive(6)
    skills = SkillAssignment(6, {u: {f"s{u}"} for u in range(6)})
    rows = run_compat_stats(g, KINDS + (RelationKind.SBPH,), skills=skills)
    for row in rows:
        assert row.pct_users == pytest.approx(100.0)
        assert row.pct_skills == pytest.approx(100.0)
        assert row.avg_dist == pytest.approx(1.0)


def test_streaming_matches_relation_build():
    for seed in range(6):
        g = random_connected_signed_graph(14, 0.3, 0.4, seed)
        streamed = streaming_pair_stats(g, KINDS)
        for kind in KINDS:
            relation = build_relation(g, kind)
            cnt, dsum = streamed[kind]
            assert cnt == relation.pair_count()
            assert dsum == sum(d for _, _, d in relation.pairs())


def test_streaming_workers_agree():
    g = random_connected_signed_graph(60, 0.1, 0.3, seed=2)
    assert streaming_pair_stats(g, KINDS, workers=1) == \
        streaming_pair_stats(g, KINDS, workers=2)


def test_stats_csv_shape():
    rows = [CompatStatsRow(RelationKind.SPA, 44.719, 80.571, 4.131)]
    assert stats_to_csv(rows) == ("kind,pct_users,pct_skills,avg_dist\n"
                                  "SPA,44.72,80.57,4.13\n")


# -- experiments -----------------------------------------------------------

def small_instance(seed=0):
    g = random_connected_signed_graph(16, 0.25, 0.25, seed)
    skills = generate_zipf_skills(16, 8, 1.0, seed=seed)
    return g, skills


def test_singleton_tasks_solve_fully_on_positive_graph():
    g = complete_positive(5)
    skills = SkillAssignment(5, {u: {f"s{u}"} for u in range(5)})
    spec = ExperimentSpec(kinds=[RelationKind.SPA], task_sizes=[1],
                          tasks_per_size=10, seed=4)
    rows = run_team_experiments(g, skills, spec)
    solved = [r for r in rows if r.policy != "MAX"]
    assert all(r.solution_pct == 100.0 and r.avg_cost == 0.0 for r in solved)


def test_solution_rate_bounded_by_max():
    g, skills = small_instance(3)
    spec = ExperimentSpec(kinds=list(KINDS), task_sizes=[2, 3],
                          tasks_per_size=12, seed=11)
    rows = run_team_experiments(g, skills, spec)
    for kind in KINDS:
        for k in (2, 3):
            bucket = [r for r in rows if r.kind == kind and r.k == k]
            max_row = next(r for r in bucket if r.policy == "MAX")
            for r in bucket:
                if r.policy != "MAX":
                    assert r.solution_pct <= max_row.solution_pct + 1e-9


def test_max_is_monotone_in_relation_laxness():
    g, skills = small_instance(5)
    spec = ExperimentSpec(kinds=list(KINDS), task_sizes=[3],
                          tasks_per_size=15, seed=21)
    rows = run_team_experiments(g, skills, spec)
    maxima = {r.kind: r.solution_pct for r in rows if r.policy == "MAX"}
    chain = [RelationKind.SPA, RelationKind.SPM, RelationKind.SPO, RelationKind.NNE]
    for strict, lax in zip(chain, chain[1:]):
        assert maxima[strict] <= maxima[lax] + 1e-9


def test_experiment_csv_deterministic():
    g, skills = small_instance(7)
    spec = ExperimentSpec(kinds=[RelationKind.SPO, RelationKind.NNE],
                          task_sizes=[2], tasks_per_size=8, seed=13)
    a = experiments_to_csv(run_team_experiments(g, skills, spec))
    b = experiments_to_csv(run_team_experiments(g, skills, spec))
    assert a == b
    assert a.startswith("kind,k,policy,solution_pct,avg_cost\n")


def test_bad_spec_rejected():
    with pytest.raises(ValueError):
        ExperimentSpec(kinds=[RelationKind.SPA], task_sizes=[2],
                       tasks_per_size=0, seed=1)
    with pytest.raises(ValueError):
        ExperimentSpec(kinds=[RelationKind.SPA], task_sizes=[2],
                       tasks_per_size=1, seed=1, policies=("NOPE",))


# -- baseline comparison ---------------------------------------------------

def test_all_positive_graph_baseline_fully_compatible():
    g = complete_positive(6)
    skills = SkillAssignment(6, {u: {f"s{u}"} for u in range(6)})
    rows = run_baseline_comparison(g, skills, [RelationKind.NNE], k=2,
                                   tasks_per_size=6, seed=9)
    assert all(r.pct_compatible_teams == 100.0 for r in rows)
    assert all(r.teams_formed == 6 for r in rows)


def test_baseline_detects_incompatible_teams():
    # Negative edge joins the only holders of two co-sampled skills.
    g = SignedGraph(4, [(0, 1, -1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
    skills = SkillAssignment(4, {0: {"a"}, 1: {"b"}, 2: {"a", "c"}})
    rows = run_baseline_comparison(g, skills, [RelationKind.NNE], k=2,
                                   tasks_per_size=20, seed=2)
    ignore = next(r for r in rows if r.mode.value == "IGNORE_SIGN")
    assert ignore.pct_compatible_teams < 100.0
    csv = baseline_to_csv(rows)
    assert csv.startswith("mode,kind,pct_compatible_teams,teams_formed\n")
