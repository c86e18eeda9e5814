"""Decision-support workbench for goal-oriented requirements.

Goal models carry AND/OR decompositions, quality requirements and
contribution links; criteria weights come from pairwise comparisons,
alternatives are ranked by closeness to the ideal solution, and panels of
rankings are checked for agreement with Kendall's W.
"""

from .ahp import ComparisonMatrix, CriteriaNode, derive_priorities, global_weights
from .concordance import RankMatrix, expert_comparison, kendall_w
from .engine import (
    DecisionOutcome,
    Manual,
    PriorityBands,
    Scenario,
    ScenarioKind,
    TopK,
    run_choose,
    run_prioritize_choose,
    run_scenario,
    what_if,
)
from .errors import DocumentError, DomainError
from .goals import (
    ContributionLink,
    ContributionSymbol,
    Goal,
    GoalKind,
    GoalModel,
    MetricValue,
    cluster_root_candidates,
    contribution_table,
    validate_model,
)
from .persistence import ModelDocument, load_model, save_model
from .topsis import CriterionSpec, DecisionMatrix, Direction, evaluate

__version__ = "0.1.0"

__all__ = [
    "ComparisonMatrix", "CriteriaNode", "derive_priorities", "global_weights",
    "RankMatrix", "expert_comparison", "kendall_w",
    "DecisionOutcome", "Manual", "PriorityBands", "Scenario", "ScenarioKind",
    "TopK", "run_choose", "run_prioritize_choose", "run_scenario", "what_if",
    "DocumentError", "DomainError",
    "ContributionLink", "ContributionSymbol", "Goal", "GoalKind", "GoalModel",
    "MetricValue", "cluster_root_candidates", "contribution_table",
    "validate_model",
    "ModelDocument", "load_model", "save_model",
    "CriterionSpec", "DecisionMatrix", "Direction", "evaluate",
    "fixture_path",
]


def fixture_path(name: str):
    """Path to a bundled case-study fixture file."""
    from importlib import resources
    from pathlib import Path

    return Path(str(resources.files(__package__).joinpath("fixtures", name)))
