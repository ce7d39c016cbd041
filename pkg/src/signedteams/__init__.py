"""Compatibility analysis and team formation on signed social networks."""

from .balance import is_balanced_node_set, is_balanced_path, path_sign
from .compat import (CompatibilityRelation, PathCounts, RelationKind,
                     build_relation, sbp_exact_reachability,
                     sbp_heuristic_counts, skill_compat_degree,
                     skill_pair_degree, sp_sign_counts)
from .graph import (ConflictingSignError, DisconnectedGraphError,
                    GraphFormatError, SignedGraph, SkillAssignment, Task,
                    UnknownNodeError, load_graph, load_skills, save_graph,
                    save_skills)
from .teams import (FormationResult, IncompatibleTeamError, PolicyConfig,
                    SkillPolicy, Team, TransformMode, UserPolicy, form_team,
                    rarest_first_unsigned, select_skill, select_user,
                    team_cost, unsigned_transform)

__all__ = [
    "CompatibilityRelation", "ConflictingSignError", "DisconnectedGraphError",
    "FormationResult", "GraphFormatError", "IncompatibleTeamError",
    "PathCounts", "PolicyConfig", "RelationKind", "SignedGraph",
    "SkillAssignment", "SkillPolicy", "Task", "Team", "TransformMode",
    "UnknownNodeError", "UserPolicy", "build_relation", "form_team",
    "is_balanced_node_set", "is_balanced_path", "load_graph", "load_skills",
    "path_sign", "rarest_first_unsigned", "save_graph", "save_skills",
    "sbp_exact_reachability", "sbp_heuristic_counts", "select_skill",
    "select_user", "skill_compat_degree", "skill_pair_degree",
    "sp_sign_counts", "team_cost", "unsigned_transform",
]

__version__ = "0.1.0"
