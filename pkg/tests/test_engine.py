import pytest

from igape.ahp import ComparisonMatrix, CriteriaNode
from igape.engine import (
    Band, ContributionEdit, IdentityEdit, JudgmentEdit, LocalWeightsEdit,
    Manual, PriorityBands, Scenario, ScenarioKind, TopK, _apply_policy,
    apply_contribution_edit, apply_hierarchy_edit, build_decision_matrix,
    direction_for, map_symbol, resolve_weight_stage, run_choose,
    run_prioritize_choose, run_scenario, what_if,
)
from igape.errors import (
    CoverageError, EditError, KindMismatchError, NormalizationError, PolicyError,
)
from igape.goals import (
    ContributionSymbol, GoalKind, MetricValue, RawTable, contribution_table,
)
from igape.topsis import Direction

GATEWAY_ALTS = ["Option D", "Option C", "Option B", "Option A"]
GATEWAY_CLOSENESS = [0.7726102808765936, 0.4625596085703909,
                     0.5831010345418766, 0.2360713760890739]


def test_symbol_scale():
    assert [map_symbol(s) for s in ContributionSymbol] == [2, 1, 0, -1, -2]


def test_direction_for_kinds():
    assert direction_for(GoalKind.NFRB) is Direction.BENEFIT
    assert direction_for(GoalKind.NFRN) is Direction.COST
    assert direction_for(GoalKind.SOFT) is Direction.BENEFIT
    with pytest.raises(KindMismatchError):
        direction_for(GoalKind.HARD)


def raw_table():
    return RawTable(
        alternatives=["x", "y"],
        criteria=["price", "appeal"],
        cells=[[MetricValue("units", 10.0), ContributionSymbol.PLUS],
               [MetricValue("units", 20.0), ContributionSymbol.STRONG_PLUS]])


KINDS = {"price": GoalKind.NFRN, "appeal": GoalKind.SOFT}
DIRECTIONS = {"price": Direction.COST, "appeal": Direction.BENEFIT}


def test_build_decision_matrix_maps_payloads():
    matrix = build_decision_matrix(raw_table(), {"price": 0.6, "appeal": 0.4},
                                   DIRECTIONS, KINDS)
    assert matrix.values == [[10.0, 1.0], [20.0, 2.0]]
    assert [s.direction for s in matrix.criteria] == [Direction.COST,
                                                      Direction.BENEFIT]


def test_build_decision_matrix_coverage_errors():
    with pytest.raises(CoverageError):
        build_decision_matrix(raw_table(), {"price": 1.0}, DIRECTIONS, KINDS)
    with pytest.raises(CoverageError):
        build_decision_matrix(raw_table(), {"price": 0.6, "appeal": 0.4},
                              {"price": Direction.COST}, KINDS)


def test_build_decision_matrix_direction_must_match_kind():
    flipped = {"price": Direction.BENEFIT, "appeal": Direction.BENEFIT}
    with pytest.raises(KindMismatchError):
        build_decision_matrix(raw_table(), {"price": 0.6, "appeal": 0.4},
                              flipped, KINDS)


def test_build_decision_matrix_checks_weight_sum():
    with pytest.raises(NormalizationError):
        build_decision_matrix(raw_table(), {"price": 0.6, "appeal": 0.6},
                              DIRECTIONS, KINDS)


def test_resolve_weight_stage_warns_on_inconsistency():
    tree = CriteriaNode("root", judgments=ComparisonMatrix(
        ["a", "b", "c"], [[1, 2, 5], [1 / 2, 1, 1 / 2], [1 / 5, 2, 1]]),
        children=[CriteriaNode("a"), CriteriaNode("b"), CriteriaNode("c")])
    stage = resolve_weight_stage(tree)
    assert len(stage.warnings) == 1
    assert "consistency ratio" in stage.warnings[0]
    assert stage.step.step == "weights"
    assert set(stage.step.data["global_weights"]) == {"a", "b", "c"}


def test_run_choose_on_fixture(document):
    outcome = run_choose(document.model, "payment-gateway", GATEWAY_ALTS,
                         document.hierarchies["gateway-qr"])
    assert outcome.ranking.closeness == pytest.approx(GATEWAY_CLOSENESS, abs=1e-12)
    assert outcome.ranking.ranking == ["Option D", "Option B", "Option C",
                                       "Option A"]
    assert outcome.chosen == ["Option D"]
    assert outcome.rejected == ["Option A"]
    assert [s.step for s in outcome.trace] == ["weights", "decision-matrix",
                                              "topsis"]
    assert outcome.warnings == []


def test_trace_records_raw_and_numeric_cells(document):
    outcome = run_choose(document.model, "payment-gateway", GATEWAY_ALTS,
                         document.hierarchies["gateway-qr"])
    matrix_step = outcome.trace[1]
    raw_row = matrix_step.data["raw"][0]
    assert raw_row[0] == {"metric": "currency units", "value": 7500.0}
    assert raw_row[8] == "++"
    assert matrix_step.data["values"][0][8] == 2.0


def test_run_prioritize_choose_on_fixture(document):
    scenario = document.scenarios["support"]
    per_goal = run_prioritize_choose(
        document.model, scenario.cluster, scenario.goals, scenario.goal_weights,
        scenario.alternatives, document.hierarchies["support-qr"],
        scenario.policy)
    assert list(per_goal) == ["Product Information", "Purchase Support",
                              "General Feedback"]
    outcome = per_goal["General Feedback"]
    assert outcome.goal_priorities == {"Product Information": 0.255,
                                       "Purchase Support": 0.520,
                                       "General Feedback": 0.225}
    assert outcome.chosen == ["Email"]
    assert outcome.rejected == ["Telephone (Toll-free)", "Online Chat"]
    assert per_goal["Purchase Support"].chosen == [
        "Telephone (Toll-free)", "Online Chat", "Email"]
    # every goal shares the one ranking
    ids = {id(o.ranking) for o in per_goal.values()}
    assert len(ids) == 1


def test_goal_count_mismatch_rejected(document):
    scenario = document.scenarios["support"]
    with pytest.raises(CoverageError):
        run_prioritize_choose(
            document.model, scenario.cluster, scenario.goals, [0.5, 0.5],
            scenario.alternatives, document.hierarchies["support-qr"],
            scenario.policy)


RANKING = ["t", "c", "e"]


def test_top_k_policy():
    assert _apply_policy(TopK(2), "g", 0.5, RANKING) == ["t", "c"]
    with pytest.raises(PolicyError):
        _apply_policy(TopK(0), "g", 0.5, RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(TopK(4), "g", 0.5, RANKING)


def test_priority_bands_policy_defaults():
    bands = PriorityBands()
    assert _apply_policy(bands, "g", 0.52, RANKING) == RANKING
    assert _apply_policy(bands, "g", 0.255, RANKING) == ["t"]
    assert _apply_policy(bands, "g", 0.225, RANKING) == ["t"]


def test_priority_bands_policy_errors():
    with pytest.raises(PolicyError):
        _apply_policy(PriorityBands(bands=()), "g", 0.5, RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(PriorityBands(bands=(Band(0.0, 9),)), "g", 0.5, RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(PriorityBands(bands=(Band(0.6, 1),)), "g", 0.5, RANKING)


def test_manual_policy():
    policy = Manual(chosen={"g": ("e", "t")}, rationale="both stay open")
    # picks come back in ranking order, not declaration order
    assert _apply_policy(policy, "g", 0.5, RANKING) == ["t", "e"]


def test_manual_policy_errors():
    with pytest.raises(PolicyError):
        _apply_policy(Manual(chosen={"g": ("t",)}, rationale="  "), "g", 0.5,
                      RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(Manual(chosen={}, rationale="r"), "g", 0.5, RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(Manual(chosen={"g": ("nope",)}, rationale="r"), "g", 0.5,
                      RANKING)
    with pytest.raises(PolicyError):
        _apply_policy(Manual(chosen={"g": ()}, rationale="r"), "g", 0.5, RANKING)


def test_run_scenario_dispatch(document):
    run = run_scenario(document.model, document.hierarchies["gateway-qr"],
                       document.scenarios["gateway"])
    assert run.kind is ScenarioKind.CHOOSE
    assert run.outcome is not None and run.per_goal is None
    run2 = run_scenario(document.model, document.hierarchies["support-qr"],
                        document.scenarios["support"])
    assert run2.kind is ScenarioKind.PRIORITIZE_CHOOSE
    assert run2.outcome is None and set(run2.per_goal) == set(
        document.scenarios["support"].goals)
    assert run2.shared_ranking().ranking[0] == "Telephone (Toll-free)"


def test_prioritize_scenario_needs_priorities_and_policy(document):
    scenario = document.scenarios["support"]
    scenario.goal_weights = None
    with pytest.raises(CoverageError):
        run_scenario(document.model, document.hierarchies["support-qr"], scenario)
    scenario.goal_weights = [0.255, 0.520, 0.225]
    scenario.policy = None
    with pytest.raises(PolicyError):
        run_scenario(document.model, document.hierarchies["support-qr"], scenario)


def test_apply_contribution_edit_replaces_one_link(document):
    edit = ContributionEdit("Option A", "Dispute Resolution",
                            ContributionSymbol.STRONG_PLUS)
    edited = apply_contribution_edit(document.model, edit)
    original = contribution_table(document.model, "payment-gateway", GATEWAY_ALTS)
    changed = contribution_table(edited, "payment-gateway", GATEWAY_ALTS)
    assert original.cells[3][9] is ContributionSymbol.MINUS
    assert changed.cells[3][9] is ContributionSymbol.STRONG_PLUS
    # everything else is untouched
    assert changed.cells[0] == original.cells[0]


def test_contribution_edit_errors(document):
    with pytest.raises(EditError):
        apply_contribution_edit(document.model,
                                ContributionEdit("Option A", "ghost",
                                                 ContributionSymbol.PLUS))
    with pytest.raises(EditError):
        apply_contribution_edit(document.model,
                                ContributionEdit("Option A", "Set up Fee",
                                                 ContributionSymbol.PLUS))
    with pytest.raises(EditError):
        apply_contribution_edit(document.model,
                                ContributionEdit("Option A",
                                                 "Dispute Resolution",
                                                 MetricValue("days", 1.0)))
    with pytest.raises(EditError):
        apply_contribution_edit(document.model,
                                ContributionEdit("Email", "Dispute Resolution",
                                                 ContributionSymbol.PLUS))


def test_local_weights_edit(document):
    tree = document.hierarchies["gateway-qr"]
    edited = apply_hierarchy_edit(tree, LocalWeightsEdit(
        "Cost", (0.5, 0.3, 0.2)))
    node = next(c for c in edited.children if c.id == "Cost")
    assert node.weights == [0.5, 0.3, 0.2]
    # the original tree is untouched
    original = next(c for c in tree.children if c.id == "Cost")
    assert original.weights == [0.221, 0.451, 0.328]


def test_local_weights_edit_errors(document):
    tree = document.hierarchies["gateway-qr"]
    with pytest.raises(EditError):
        apply_hierarchy_edit(tree, LocalWeightsEdit("ghost", (1.0,)))
    with pytest.raises(EditError):
        apply_hierarchy_edit(tree, LocalWeightsEdit("Set up Fee", (1.0,)))
    with pytest.raises(EditError):
        apply_hierarchy_edit(tree, LocalWeightsEdit("Cost", (0.5, 0.5)))
    with pytest.raises(EditError):
        apply_hierarchy_edit(tree, LocalWeightsEdit("Cost", (0.9, 0.2, -0.1)))
    with pytest.raises(EditError):
        apply_hierarchy_edit(tree, LocalWeightsEdit("Cost", (0.5, 0.3, 0.1)))


def judgment_tree():
    return CriteriaNode("root", judgments=ComparisonMatrix(
        ["a", "b"], [[1, 3], [1 / 3, 1]]),
        children=[CriteriaNode("a"), CriteriaNode("b")])


def test_judgment_edit_keeps_reciprocity():
    edited = apply_hierarchy_edit(judgment_tree(), JudgmentEdit("root", 0, 1, 5.0))
    assert edited.judgments.entries[0][1] == 5.0
    assert edited.judgments.entries[1][0] == pytest.approx(1 / 5, abs=1e-15)


def test_judgment_edit_errors():
    with pytest.raises(EditError):
        apply_hierarchy_edit(judgment_tree(), JudgmentEdit("root", 0, 5, 2.0))
    with pytest.raises(EditError):
        apply_hierarchy_edit(judgment_tree(), JudgmentEdit("root", 0, 1, -2.0))
    with pytest.raises(EditError):
        apply_hierarchy_edit(judgment_tree(), JudgmentEdit("root", 0, 0, 2.0))
    weights_only = CriteriaNode("root", weights=[0.5, 0.5], children=[
        CriteriaNode("a"), CriteriaNode("b")])
    with pytest.raises(EditError):
        apply_hierarchy_edit(weights_only, JudgmentEdit("root", 0, 1, 2.0))


def test_what_if_identity_is_a_fixed_point(document):
    result = what_if(document.model, document.hierarchies["gateway-qr"],
                     document.scenarios["gateway"], IdentityEdit())
    assert result.edited is result.baseline
    assert result.rank_moves == []
    assert all(d == 0.0 for d in result.closeness_deltas.values())


def test_what_if_contribution_edit(document):
    edit = ContributionEdit("Option A", "Dispute Resolution",
                            ContributionSymbol.STRONG_PLUS)
    result = what_if(document.model, document.hierarchies["gateway-qr"],
                     document.scenarios["gateway"], edit)
    after = result.edited.shared_ranking()
    assert after.closeness == pytest.approx(
        [0.7588671459116035, 0.442671111712362, 0.5700844909583204,
         0.2503446525378873], abs=1e-12)
    assert result.rank_moves == []  # better, but not enough to pass anyone
    assert result.closeness_deltas["Option A"] > 0
    assert result.closeness_deltas["Option D"] < 0
    # the baseline run is reported unedited
    assert result.baseline.shared_ranking().closeness == pytest.approx(
        GATEWAY_CLOSENESS, abs=1e-12)


def test_what_if_weights_edit_moves_ranks(document):
    # pushing nearly all weight onto the cost branch flips the order
    edit = LocalWeightsEdit("Quality Requirements", (0.97, 0.01, 0.01, 0.01))
    result = what_if(document.model, document.hierarchies["gateway-qr"],
                     document.scenarios["gateway"], edit)
    assert result.rank_moves  # some alternative moved
    moved = {m.alternative: (m.before, m.after) for m in result.rank_moves}
    for alt, (before, after) in moved.items():
        assert before != after


def test_what_if_leaves_inputs_untouched(document):
    edit = ContributionEdit("Option A", "Dispute Resolution",
                            ContributionSymbol.STRONG_PLUS)
    what_if(document.model, document.hierarchies["gateway-qr"],
            document.scenarios["gateway"], edit)
    table = contribution_table(document.model, "payment-gateway", GATEWAY_ALTS)
    assert table.cells[3][9] is ContributionSymbol.MINUS


def test_scenario_judgment_source(document):
    scenario = Scenario(
        name="support-judged", kind=ScenarioKind.PRIORITIZE_CHOOSE,
        cluster="support-system",
        alternatives=["Online Chat", "Telephone (Toll-free)", "Email"],
        hierarchy="support-qr",
        goals=["Product Information", "Purchase Support", "General Feedback"],
        goal_judgments=ComparisonMatrix(
            ["Product Information", "Purchase Support", "General Feedback"],
            [[1, 1 / 2, 1], [2, 1, 2], [1, 1 / 2, 1]]),
        policy=TopK(1))
    run = run_scenario(document.model, document.hierarchies["support-qr"],
                       scenario)
    outcome = run.per_goal["Purchase Support"]
    assert outcome.goal_priorities["Purchase Support"] == pytest.approx(0.5,
                                                                        abs=1e-9)
    assert outcome.chosen == ["Telephone (Toll-free)"]
