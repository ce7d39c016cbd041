"""Command-line interface: stats, team, experiment, baseline, generate."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .compat import RelationKind, build_relation
from .graph import Task, load_graph, load_skills, save_graph, save_skills
from .harness import (DEFAULT_POLICIES, ExperimentSpec, POLICY_PRESETS,
                      baseline_to_csv, experiments_to_csv,
                      generate_zipf_skills, random_connected_signed_graph,
                      run_baseline_comparison, run_compat_stats,
                      run_team_experiments, stats_to_csv)
from .teams import PolicyConfig, SkillPolicy, UserPolicy, form_team

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_TEAM = 2


def _parse_kinds(text: str) -> list[RelationKind]:
    return [RelationKind(tok.strip().upper()) for tok in text.split(",") if tok.strip()]


def _load_config(path: Optional[str]) -> dict[str, str]:
    """Optional key=value config file; CLI flags win over file entries."""
    if path is None:
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            if not _:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signedteams",
        description="Compatibility analysis and team formation on signed networks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, skills_required=False):
        p.add_argument("--graph", required=True, help="edge-list file (u v sign)")
        p.add_argument("--skills", required=skills_required,
                       help="skills file (u skill...)")
        p.add_argument("--relation", default=None,
                       help="comma-separated relation kinds (default depends on command)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--largest-component", action="store_true",
                       help="keep the largest component instead of rejecting "
                            "disconnected input")
        p.add_argument("--sbp-budget", type=int, default=None,
                       help="path-length budget for exact SBP search")

    p = sub.add_parser("stats", help="pairwise compatibility statistics")
    common(p)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("team", help="form one team for a given task")
    common(p, skills_required=True)
    p.add_argument("--task", required=True, help="comma-separated skill ids")
    p.add_argument("--skill-policy", default="LEAST_COMPATIBLE_FIRST",
                   choices=[s.value for s in SkillPolicy])
    p.add_argument("--user-policy", default="MIN_DISTANCE",
                   choices=[u.value for u in UserPolicy])

    p = sub.add_parser("experiment", help="team-formation experiment sweep")
    common(p, skills_required=True)
    p.add_argument("--task-sizes", default="3,5,10",
                   help="comma-separated task sizes")
    p.add_argument("--tasks-per-size", type=int, default=50)
    p.add_argument("--policies", default=",".join(DEFAULT_POLICIES),
                   help="comma-separated policy names "
                        f"(choose from {sorted(POLICY_PRESETS)})")

    p = sub.add_parser("baseline", help="compare against sign-blind team formation")
    common(p, skills_required=True)
    p.add_argument("--k", type=int, default=5, help="task size")
    p.add_argument("--tasks-per-size", type=int, default=50)

    p = sub.add_parser("generate", help="emit synthetic graph and/or skills files")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="skills output file")
    p.add_argument("--graph", default=None,
                   help="existing graph whose node labels the skills use")
    p.add_argument("--graph-out", default=None,
                   help="also generate a random connected signed graph here")
    p.add_argument("--nodes", type=int, default=100)
    p.add_argument("--edge-prob", type=float, default=0.05)
    p.add_argument("--neg-fraction", type=float, default=0.2)
    p.add_argument("--n-skills", type=int, default=50)
    p.add_argument("--exponent", type=float, default=1.0)
    p.add_argument("--mean-skills", type=float, default=3.0)
    return parser


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    config = _load_config(getattr(args, "config", None))
    for key, value in config.items():
        if not hasattr(args, key):
            raise ValueError(f"unknown config key {key!r}")
        current = getattr(args, key)
        if current == parser.get_default(key) or current is None:
            cast = type(current) if current is not None and not isinstance(current, bool) else str
            setattr(args, key, cast(value))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "config"):
            _apply_config(args, parser)
        return _dispatch(args)
    except BrokenPipeError:
        raise
    except Exception as exc:  # CLI boundary: report and exit nonzero
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "generate":
        if args.graph_out:
            graph = random_connected_signed_graph(
                args.nodes, args.edge_prob, args.neg_fraction, args.seed)
            save_graph(graph, args.graph_out)
        elif args.graph:
            graph = load_graph(args.graph)
        else:
            raise ValueError("generate needs --graph or --graph-out")
        skills = generate_zipf_skills(graph.n, args.n_skills, args.exponent,
                                      args.seed, args.mean_skills)
        save_skills(skills, graph, args.out)
        return EXIT_OK

    graph = load_graph(args.graph, largest_component=args.largest_component)
    skills = load_skills(args.skills, graph) if args.skills else None

    if args.command == "stats":
        kinds = _parse_kinds(args.relation) if args.relation else [
            RelationKind.SPA, RelationKind.SPM, RelationKind.SPO,
            RelationKind.SBPH, RelationKind.NNE]
        rows = run_compat_stats(graph, kinds, skills=skills,
                                workers=args.workers, sbp_budget=args.sbp_budget)
        _emit(stats_to_csv(rows), args.out)
        return EXIT_OK

    if args.command == "team":
        kinds = _parse_kinds(args.relation) if args.relation else [RelationKind.SPA]
        if len(kinds) != 1:
            raise ValueError("team takes exactly one --relation kind")
        relation = build_relation(graph, kinds[0], sbp_budget=args.sbp_budget)
        task = Task([s.strip() for s in args.task.split(",") if s.strip()], skills)
        user_policy = UserPolicy(args.user_policy)
        config = PolicyConfig(SkillPolicy(args.skill_policy), user_policy,
                              seed=args.seed if user_policy is UserPolicy.RANDOM else None)
        result = form_team(graph, relation, skills, task, config)
        if result.team is None:
            _emit(f"no team: {result.reason}\n", args.out)
            return EXIT_NO_TEAM
        team = result.team
        members = ",".join(graph.label(u) for u in team.sorted_members())
        covered = ",".join(sorted(team.covered))
        _emit("members,covered,cost,kind,skill_policy,user_policy,seed\n"
              f"\"{members}\",\"{covered}\",{team.cost},{kinds[0]},"
              f"{args.skill_policy},{args.user_policy},{args.seed}\n", args.out)
        return EXIT_OK

    if args.command == "experiment":
        kinds = _parse_kinds(args.relation) if args.relation else [
            RelationKind.SPA, RelationKind.SPM, RelationKind.SPO,
            RelationKind.SBPH, RelationKind.NNE]
        spec = ExperimentSpec(
            kinds=kinds,
            task_sizes=[int(t) for t in args.task_sizes.split(",") if t.strip()],
            tasks_per_size=args.tasks_per_size,
            seed=args.seed,
            policies=[p.strip().upper() for p in args.policies.split(",") if p.strip()],
            sbp_budget=args.sbp_budget)
        rows = run_team_experiments(graph, skills, spec)
        _emit(experiments_to_csv(rows), args.out)
        return EXIT_OK

    if args.command == "baseline":
        kinds = _parse_kinds(args.relation) if args.relation else [
            RelationKind.SPA, RelationKind.SPM, RelationKind.SPO,
            RelationKind.SBPH, RelationKind.NNE]
        rows = run_baseline_comparison(graph, skills, kinds, args.k,
                                       args.tasks_per_size, args.seed,
                                       sbp_budget=args.sbp_budget)
        _emit(baseline_to_csv(rows), args.out)
        return EXIT_OK

    raise ValueError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
