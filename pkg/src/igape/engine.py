"""Scenario orchestration: from a goal cluster to a ranked, selected outcome.

Two scenario kinds exist. "Choose" picks one alternative for a root goal:
criteria weights come from the hierarchy, the cluster's contribution table
becomes a decision matrix (soft-goal symbols mapped onto 2..-2), and the
closeness ranking picks the winner. "Prioritize and choose" additionally
weighs sibling functional goals and hands each goal a slice of the shared
ranking through a selection policy. Every outcome carries a full trace of
the artifacts that produced it, and what-if edits recompute only the
stages an edit can affect.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum

from . import ahp, topsis
from .ahp import ComparisonMatrix, CriteriaNode
from .errors import (
    CoverageError,
    EditError,
    KindMismatchError,
    NormalizationError,
    PolicyError,
    UnknownReferenceError,
)
from .goals import (
    ContributionLink,
    ContributionSymbol,
    GoalKind,
    GoalModel,
    MetricValue,
    RawTable,
    contribution_table,
)
from .topsis import CriterionSpec, DecisionMatrix, Direction, TopsisResult


class ScenarioKind(str, Enum):
    CHOOSE = "choose"
    PRIORITIZE_CHOOSE = "prioritize-choose"


#: Linear numeric scale for soft-goal contribution symbols.
SYMBOL_SCALE = {
    ContributionSymbol.STRONG_PLUS: 2,
    ContributionSymbol.PLUS: 1,
    ContributionSymbol.NEUTRAL: 0,
    ContributionSymbol.MINUS: -1,
    ContributionSymbol.STRONG_MINUS: -2,
}

#: Criterion direction implied by a quality requirement's kind.
KIND_DIRECTIONS = {
    GoalKind.NFRB: Direction.BENEFIT,
    GoalKind.NFRN: Direction.COST,
    GoalKind.SOFT: Direction.BENEFIT,
}


def map_symbol(symbol: ContributionSymbol) -> int:
    return SYMBOL_SCALE[symbol]


def direction_for(kind: GoalKind) -> Direction:
    direction = KIND_DIRECTIONS.get(kind)
    if direction is None:
        raise KindMismatchError(f"kind {kind.value} is not a quality requirement")
    return direction


@dataclass(frozen=True)
class TopK:
    """Give every goal the first k alternatives of the ranking."""

    k: int


@dataclass(frozen=True)
class Band:
    min_priority: float
    take: int | None  # None = all alternatives


@dataclass(frozen=True)
class PriorityBands:
    """Selection count driven by the goal's priority band.

    Defaults: priority 0.5 and up takes every alternative, anything below
    takes the top one.
    """

    bands: tuple[Band, ...] = (Band(0.5, None), Band(0.25, 1), Band(0.0, 1))


@dataclass(frozen=True)
class Manual:
    """Explicit per-goal selections with a mandatory rationale."""

    chosen: dict[str, tuple[str, ...]]
    rationale: str


SelectionPolicy = TopK | PriorityBands | Manual


@dataclass
class TraceStep:
    step: str
    summary: str
    data: dict


@dataclass
class DecisionOutcome:
    scenario: ScenarioKind
    ranking: TopsisResult
    chosen: list[str]
    rejected: list[str]
    goal: str | None = None
    goal_priorities: dict[str, float] | None = None
    warnings: list[str] = field(default_factory=list)
    trace: list[TraceStep] = field(default_factory=list)


@dataclass
class Scenario:
    """A named, storable decision question over one cluster."""

    name: str
    kind: ScenarioKind
    cluster: str
    alternatives: list[str]
    hierarchy: str
    goals: list[str] = field(default_factory=list)
    goal_weights: list[float] | None = None
    goal_judgments: ComparisonMatrix | None = None
    policy: SelectionPolicy | None = None


@dataclass
class ScenarioRun:
    scenario: str
    kind: ScenarioKind
    outcome: DecisionOutcome | None = None
    per_goal: dict[str, DecisionOutcome] | None = None

    def shared_ranking(self) -> TopsisResult:
        if self.outcome is not None:
            return self.outcome.ranking
        return next(iter(self.per_goal.values())).ranking


@dataclass
class WeightStage:
    """Resolved criterion weights plus the trace step that records them."""

    weights: dict[str, float]
    warnings: list[str]
    step: TraceStep


def build_decision_matrix(raw: RawTable,
                          weights: dict[str, float],
                          directions: dict[str, Direction],
                          kinds: dict[str, GoalKind]) -> DecisionMatrix:
    """Turn a contribution table into a weighted numeric decision matrix.

    Metric payloads pass through; symbols map onto the linear scale. Every
    criterion needs a weight and a direction that agrees with its kind.
    """
    specs = []
    for cid in raw.criteria:
        if cid not in weights:
            raise CoverageError(f"no weight for criterion {cid!r}")
        if cid not in directions:
            raise CoverageError(f"no direction for criterion {cid!r}")
        if cid not in kinds:
            raise CoverageError(f"no kind for criterion {cid!r}")
        expected = direction_for(kinds[cid])
        if directions[cid] != expected:
            raise KindMismatchError(
                f"criterion {cid!r} has kind {kinds[cid].value}, which implies "
                f"{expected.value}, not {directions[cid].value}")
        specs.append(CriterionSpec(cid, directions[cid], float(weights[cid])))
    total = sum(s.weight for s in specs)
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(f"criterion weights sum to {total}, not 1")
    values = []
    for row in raw.cells:
        values.append([
            float(cell.value) if isinstance(cell, MetricValue) else float(map_symbol(cell))
            for cell in row
        ])
    return DecisionMatrix(list(raw.alternatives), specs, values)


def resolve_weight_stage(hierarchy: CriteriaNode, method: str = "eigen") -> WeightStage:
    """Run the hierarchy once: global weights plus consistency warnings."""
    weights = ahp.global_weights(hierarchy, method=method)
    reports = ahp.consistency_reports(hierarchy, method=method)
    warnings = [
        f"judgments at criterion {cid!r} have consistency ratio "
        f"{report.cr:.4f}, above the 0.10 threshold"
        for cid, report in reports.items() if not report.acceptable
    ]
    step = TraceStep(
        step="weights",
        summary=f"derived global weights for {len(weights)} criteria ({method})",
        data={
            "method": method,
            "global_weights": dict(weights),
            "consistency": {
                cid: {"lambda_max": r.lambda_max, "ci": r.ci, "cr": r.cr,
                      "acceptable": r.acceptable}
                for cid, r in reports.items()
            },
        },
    )
    return WeightStage(weights, warnings, step)


def _check_leaf_cover(weights: dict[str, float], criteria: list[str]) -> None:
    missing = [c for c in criteria if c not in weights]
    if missing:
        raise CoverageError(f"hierarchy carries no weight for criteria {missing}")
    extra = [c for c in weights if c not in criteria]
    if extra:
        raise CoverageError(f"hierarchy weighs criteria {extra} outside the cluster")


def _rank_stage(model: GoalModel, cluster_id: str, alternatives: list[str],
                stage: WeightStage) -> tuple[TopsisResult, list[TraceStep], list[str]]:
    raw = contribution_table(model, cluster_id, alternatives)
    _check_leaf_cover(stage.weights, raw.criteria)
    kinds = {cid: model.goals[cid].kind for cid in raw.criteria}
    directions = {cid: direction_for(kind) for cid, kind in kinds.items()}
    matrix = build_decision_matrix(raw, stage.weights, directions, kinds)
    matrix_step = TraceStep(
        step="decision-matrix",
        summary=(f"built {len(matrix.alternatives)}x{len(matrix.criteria)} "
                 f"decision matrix for cluster {cluster_id!r}"),
        data={
            "cluster": cluster_id,
            "alternatives": list(matrix.alternatives),
            "criteria": [
                {"id": s.id, "direction": s.direction.value, "weight": s.weight}
                for s in matrix.criteria
            ],
            "raw": [[_payload_data(cell) for cell in row] for row in raw.cells],
            "values": [list(row) for row in matrix.values],
        },
    )
    result = topsis.evaluate(matrix)
    topsis_step = TraceStep(
        step="topsis",
        summary="ranked alternatives by closeness to the ideal solution",
        data={
            "normalized": result.normalized,
            "weighted": result.weighted,
            "ideal": result.ideal,
            "anti_ideal": result.anti_ideal,
            "s_plus": result.s_plus,
            "s_minus": result.s_minus,
            "closeness": result.closeness,
            "ranking": list(result.ranking),
        },
    )
    return result, [stage.step, matrix_step, topsis_step], list(result.warnings)


def _payload_data(cell: "MetricValue | ContributionSymbol"):
    if isinstance(cell, MetricValue):
        return {"metric": cell.metric_name, "value": cell.value}
    return cell.value


def run_choose(model: GoalModel, cluster_id: str, alternatives: list[str],
               hierarchy: CriteriaNode, method: str = "eigen",
               weight_stage: WeightStage | None = None) -> DecisionOutcome:
    """Pick one alternative: rank-1 is chosen, rank-last rejected."""
    stage = weight_stage or resolve_weight_stage(hierarchy, method)
    result, trace, warnings = _rank_stage(model, cluster_id, alternatives, stage)
    return DecisionOutcome(
        scenario=ScenarioKind.CHOOSE,
        ranking=result,
        chosen=[result.ranking[0]],
        rejected=[result.ranking[-1]],
        warnings=stage.warnings + warnings,
        trace=trace,
    )


def run_prioritize_choose(model: GoalModel, cluster_id: str, goals: list[str],
                          goal_source: "ComparisonMatrix | list[float]",
                          alternatives: list[str], hierarchy: CriteriaNode,
                          policy: SelectionPolicy, method: str = "eigen",
                          weight_stage: WeightStage | None = None,
                          ) -> dict[str, DecisionOutcome]:
    """Rank once, weigh the sibling goals, then select per goal via the policy."""
    stage = weight_stage or resolve_weight_stage(hierarchy, method)
    result, trace, warnings = _rank_stage(model, cluster_id, alternatives, stage)
    goal_weights, report = ahp.prioritize_goals(goal_source, method=method)
    if len(goal_weights) != len(goals):
        raise CoverageError(
            f"{len(goal_weights)} goal priorities for {len(goals)} goals")
    priorities = {gid: w for gid, w in zip(goals, goal_weights)}
    priority_step = TraceStep(
        step="priorities",
        summary=f"weighed {len(goals)} functional goals",
        data={
            "goals": list(goals),
            "weights": list(goal_weights),
            "source": "given" if report is None else "judgments",
            **({} if report is None else {"consistency": {
                "lambda_max": report.lambda_max, "ci": report.ci,
                "cr": report.cr, "acceptable": report.acceptable}}),
        },
    )
    if report is not None and not report.acceptable:
        warnings = warnings + [
            f"goal priority judgments have consistency ratio {report.cr:.4f}, "
            "above the 0.10 threshold"]

    out: dict[str, DecisionOutcome] = {}
    for gid in goals:
        chosen = _apply_policy(policy, gid, priorities[gid], result.ranking)
        rejected = [alt for alt in result.ranking if alt not in chosen]
        policy_step = TraceStep(
            step="policy",
            summary=f"selected {len(chosen)} of {len(alternatives)} "
                    f"alternatives for goal {gid!r}",
            data={
                "goal": gid,
                "priority": priorities[gid],
                "policy": _policy_data(policy),
                "chosen": list(chosen),
            },
        )
        out[gid] = DecisionOutcome(
            scenario=ScenarioKind.PRIORITIZE_CHOOSE,
            ranking=result,
            chosen=chosen,
            rejected=rejected,
            goal=gid,
            goal_priorities=dict(priorities),
            warnings=stage.warnings + warnings,
            trace=trace + [priority_step, policy_step],
        )
    return out


def _apply_policy(policy: SelectionPolicy, goal_id: str, priority: float,
                  ranking: list[str]) -> list[str]:
    m = len(ranking)
    if isinstance(policy, TopK):
        if not 1 <= policy.k <= m:
            raise PolicyError(f"top-k of {policy.k} is infeasible with {m} alternatives")
        return list(ranking[:policy.k])
    if isinstance(policy, PriorityBands):
        if not policy.bands:
            raise PolicyError("priority bands are empty")
        for band in policy.bands:
            if band.take is not None and not 1 <= band.take <= m:
                raise PolicyError(
                    f"band take of {band.take} is infeasible with {m} alternatives")
        for band in sorted(policy.bands, key=lambda b: -b.min_priority):
            if priority >= band.min_priority:
                take = m if band.take is None else band.take
                return list(ranking[:take])
        raise PolicyError(f"no band covers priority {priority}")
    if isinstance(policy, Manual):
        if not policy.rationale.strip():
            raise PolicyError("manual selection requires a rationale")
        if goal_id not in policy.chosen:
            raise PolicyError(f"manual selection names no choice for goal {goal_id!r}")
        picks = policy.chosen[goal_id]
        unknown = [p for p in picks if p not in ranking]
        if unknown:
            raise PolicyError(f"manual selection for {goal_id!r} names unknown {unknown}")
        if not picks:
            raise PolicyError(f"manual selection for {goal_id!r} is empty")
        return [alt for alt in ranking if alt in set(picks)]
    raise PolicyError(f"unknown selection policy {policy!r}")


def _policy_data(policy: SelectionPolicy) -> dict:
    if isinstance(policy, TopK):
        return {"kind": "top-k", "k": policy.k}
    if isinstance(policy, PriorityBands):
        return {"kind": "priority-bands",
                "bands": [{"min_priority": b.min_priority, "take": b.take}
                          for b in policy.bands]}
    return {"kind": "manual", "rationale": policy.rationale,
            "chosen": {gid: list(picks) for gid, picks in policy.chosen.items()}}


def run_scenario(model: GoalModel, hierarchy: CriteriaNode, scenario: Scenario,
                 method: str = "eigen",
                 weight_stage: WeightStage | None = None) -> ScenarioRun:
    """Run a stored scenario definition against a model and hierarchy."""
    if scenario.kind == ScenarioKind.CHOOSE:
        outcome = run_choose(model, scenario.cluster, scenario.alternatives,
                             hierarchy, method=method, weight_stage=weight_stage)
        return ScenarioRun(scenario.name, scenario.kind, outcome=outcome)
    if scenario.kind == ScenarioKind.PRIORITIZE_CHOOSE:
        source = scenario.goal_judgments if scenario.goal_judgments is not None \
            else scenario.goal_weights
        if source is None:
            raise CoverageError(
                f"scenario {scenario.name!r} carries no goal priorities")
        if scenario.policy is None:
            raise PolicyError(f"scenario {scenario.name!r} carries no selection policy")
        per_goal = run_prioritize_choose(
            model, scenario.cluster, scenario.goals, source,
            scenario.alternatives, hierarchy, scenario.policy,
            method=method, weight_stage=weight_stage)
        return ScenarioRun(scenario.name, scenario.kind, per_goal=per_goal)
    raise UnknownReferenceError(f"unknown scenario kind {scenario.kind!r}")


@dataclass(frozen=True)
class IdentityEdit:
    """No change; what-if returns the baseline untouched."""


@dataclass(frozen=True)
class ContributionEdit:
    source: str
    target: str
    payload: "MetricValue | ContributionSymbol"


@dataclass(frozen=True)
class LocalWeightsEdit:
    criterion: str
    weights: tuple[float, ...]


@dataclass(frozen=True)
class JudgmentEdit:
    """Set one judgment cell; the mirror cell keeps reciprocity."""

    criterion: str
    row: int
    col: int
    value: float


Edit = IdentityEdit | ContributionEdit | LocalWeightsEdit | JudgmentEdit


@dataclass
class RankMove:
    alternative: str
    before: int
    after: int


@dataclass
class WhatIfResult:
    baseline: ScenarioRun
    edited: ScenarioRun
    rank_moves: list[RankMove]
    closeness_deltas: dict[str, float]


def apply_contribution_edit(model: GoalModel, edit: ContributionEdit) -> GoalModel:
    """Copy the model with one contribution payload replaced."""
    target = model.goals.get(edit.target)
    if target is None:
        raise EditError(f"edit targets unknown goal {edit.target!r}")
    if isinstance(edit.payload, ContributionSymbol) and target.kind != GoalKind.SOFT:
        raise EditError(
            f"links to {target.kind.value} requirements carry a metric value, not a symbol")
    if isinstance(edit.payload, MetricValue) and target.kind == GoalKind.SOFT:
        raise EditError("soft-goal links carry a symbol, not a metric value")
    index = next((i for i, link in enumerate(model.contributions)
                  if link.source == edit.source and link.target == edit.target), None)
    if index is None:
        raise EditError(f"no contribution link from {edit.source!r} to {edit.target!r}")
    edited = copy.deepcopy(model)
    edited.contributions[index] = ContributionLink(edit.source, edit.target, edit.payload)
    return edited


def apply_hierarchy_edit(hierarchy: CriteriaNode,
                         edit: "LocalWeightsEdit | JudgmentEdit") -> CriteriaNode:
    """Copy the criteria tree with one node's local source changed."""
    edited = copy.deepcopy(hierarchy)
    node = _find_node(edited, edit.criterion)
    if node is None:
        raise EditError(f"edit names unknown criterion {edit.criterion!r}")
    if not node.children:
        raise EditError(f"criterion {edit.criterion!r} is a leaf and has no local weights")
    if isinstance(edit, LocalWeightsEdit):
        weights = [float(w) for w in edit.weights]
        if len(weights) != len(node.children):
            raise EditError(
                f"{len(weights)} weights for {len(node.children)} children")
        if any(w < 0 for w in weights):
            raise EditError("local weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise EditError(f"local weights sum to {sum(weights)}, not 1")
        node.weights = weights
        node.judgments = None
        return edited
    if node.judgments is None:
        raise EditError(f"criterion {edit.criterion!r} carries no judgment matrix")
    n = node.judgments.n
    if not (0 <= edit.row < n and 0 <= edit.col < n):
        raise EditError(f"judgment cell ({edit.row}, {edit.col}) is out of range")
    if not (isinstance(edit.value, (int, float)) and edit.value > 0):
        raise EditError(f"judgment value {edit.value!r} must be a positive real")
    if edit.row == edit.col and abs(edit.value - 1.0) > 1e-12:
        raise EditError("diagonal judgment cells must stay 1")
    entries = node.judgments.entries
    entries[edit.row][edit.col] = float(edit.value)
    entries[edit.col][edit.row] = 1.0 / float(edit.value)
    return edited


def _find_node(node: CriteriaNode, cid: str) -> CriteriaNode | None:
    if node.id == cid:
        return node
    for child in node.children:
        found = _find_node(child, cid)
        if found is not None:
            return found
    return None


def what_if(model: GoalModel, hierarchy: CriteriaNode, scenario: Scenario,
            edit: Edit, method: str = "eigen") -> WhatIfResult:
    """Answer "what changes if" for one edit against a scenario baseline.

    A contribution edit reuses the baseline's weight stage; weight and
    judgment edits rerun it. The identity edit returns the baseline as the
    edited run, a fixed point.
    """
    base_stage = resolve_weight_stage(hierarchy, method)
    baseline = run_scenario(model, hierarchy, scenario, method=method,
                            weight_stage=base_stage)
    if isinstance(edit, IdentityEdit):
        edited = baseline
    elif isinstance(edit, ContributionEdit):
        edited_model = apply_contribution_edit(model, edit)
        edited = run_scenario(edited_model, hierarchy, scenario, method=method,
                              weight_stage=base_stage)
    elif isinstance(edit, (LocalWeightsEdit, JudgmentEdit)):
        edited_tree = apply_hierarchy_edit(hierarchy, edit)
        edited = run_scenario(model, edited_tree, scenario, method=method)
    else:
        raise EditError(f"unknown edit {edit!r}")

    before = baseline.shared_ranking()
    after = edited.shared_ranking()
    before_rank = {alt: i + 1 for i, alt in enumerate(before.ranking)}
    after_rank = {alt: i + 1 for i, alt in enumerate(after.ranking)}
    moves = [RankMove(alt, before_rank[alt], after_rank[alt])
             for alt in scenario.alternatives
             if before_rank[alt] != after_rank[alt]]
    deltas = {
        alt: after.closeness[scenario.alternatives.index(alt)]
        - before.closeness[scenario.alternatives.index(alt)]
        for alt in scenario.alternatives
    }
    return WhatIfResult(baseline, edited, moves, deltas)
