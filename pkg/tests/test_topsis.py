import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from igape.errors import DegenerateInstanceError, NormalizationError, StructureError
from igape.topsis import (
    CriterionSpec, DecisionMatrix, Direction, check_matrix, evaluate, normalize,
)

B = Direction.BENEFIT
C = Direction.COST


def make(values, directions, weights, names=None):
    m = len(values)
    n = len(values[0]) if values else 0
    names = names or [f"c{j}" for j in range(n)]
    specs = [CriterionSpec(names[j], directions[j], weights[j]) for j in range(n)]
    return DecisionMatrix([f"alt{i}" for i in range(m)], specs, values)


def loop_topsis(values, directions, weights):
    """Straightforward reimplementation used as the in-test oracle."""
    m, n = len(values), len(values[0])
    norms = [math.sqrt(sum(values[i][j] ** 2 for i in range(m))) for j in range(n)]
    r = [[values[i][j] / norms[j] if norms[j] else 0.0 for j in range(n)]
         for i in range(m)]
    v = [[weights[j] * r[i][j] for j in range(n)] for i in range(m)]
    best, worst = [], []
    for j in range(n):
        col = [v[i][j] for i in range(m)]
        if directions[j] is B:
            best.append(max(col))
            worst.append(min(col))
        else:
            best.append(min(col))
            worst.append(max(col))
    sp = [math.sqrt(sum((v[i][j] - best[j]) ** 2 for j in range(n))) for i in range(m)]
    sm = [math.sqrt(sum((v[i][j] - worst[j]) ** 2 for j in range(n))) for i in range(m)]
    return [sm[i] / (sp[i] + sm[i]) if sp[i] + sm[i] else 0.5 for i in range(m)]


def test_column_norm_and_normalized_values():
    matrix = make([[7500.0], [50000.0], [30000.0], [50000.0]], [C], [1.0])
    r = normalize(matrix)
    assert r[0][0] == pytest.approx(7500.0 / 77176.74520216566, abs=1e-12)
    assert [row[0] for row in r] == pytest.approx(
        [0.09717953225876053, 0.6478635483917369, 0.3887181290350421,
         0.6478635483917369], abs=1e-12)


def test_small_instance_against_loop_oracle():
    values = [[25.0, 10.0, 30.0], [10.0, 30.0, 10.0], [30.0, 20.0, 30.0]]
    directions = [B, C, B]
    weights = [0.5, 0.3, 0.2]
    result = evaluate(make(values, directions, weights))
    assert result.closeness == pytest.approx(
        loop_topsis(values, directions, weights), abs=1e-12)


def test_ideal_and_anti_ideal_orientation():
    result = evaluate(make([[1.0, 1.0], [2.0, 2.0]], [B, C], [0.5, 0.5]))
    # benefit: ideal takes the max; cost: ideal takes the min
    assert result.ideal[0] == max(row[0] for row in result.weighted)
    assert result.ideal[1] == min(row[1] for row in result.weighted)
    assert result.anti_ideal[0] == min(row[0] for row in result.weighted)
    assert result.anti_ideal[1] == max(row[1] for row in result.weighted)


def test_dominating_alternative_wins():
    result = evaluate(make([[9.0, 1.0], [1.0, 9.0]], [B, C], [0.5, 0.5]))
    assert result.ranking == ["alt0", "alt1"]
    assert result.closeness[0] > result.closeness[1]


def test_identical_alternatives_share_closeness_half():
    result = evaluate(make([[3.0, 4.0], [3.0, 4.0]], [B, C], [0.5, 0.5]))
    assert result.closeness == [0.5, 0.5]
    assert result.ranking == ["alt0", "alt1"]  # ties keep declaration order


def test_zero_column_warns_and_stays_zero():
    result = evaluate(make([[0.0, 5.0], [0.0, 3.0]], [B, B], [0.5, 0.5]))
    assert [row[0] for row in result.normalized] == [0.0, 0.0]
    assert len(result.warnings) == 1 and "'c0'" in result.warnings[0]


def test_negative_values_pass_through_raw():
    values = [[-2.0, 4.0], [3.0, -1.0]]
    result = evaluate(make(values, [B, C], [0.6, 0.4]))
    assert result.closeness == pytest.approx(
        loop_topsis(values, [B, C], [0.6, 0.4]), abs=1e-12)
    assert result.normalized[0][0] < 0


def test_single_alternative_rejected():
    with pytest.raises(DegenerateInstanceError):
        evaluate(make([[1.0, 2.0]], [B, C], [0.5, 0.5]))


def test_no_criteria_rejected():
    with pytest.raises(StructureError):
        evaluate(DecisionMatrix(["a", "b"], [], [[], []]))


def test_ragged_rows_rejected():
    with pytest.raises(StructureError):
        check_matrix(make([[1.0, 2.0], [1.0]], [B, C], [0.5, 0.5]))


def test_non_finite_rejected():
    with pytest.raises(StructureError):
        check_matrix(make([[1.0, float("inf")], [1.0, 2.0]], [B, C], [0.5, 0.5]))


def test_weights_must_sum_to_one():
    with pytest.raises(NormalizationError):
        evaluate(make([[1.0, 2.0], [2.0, 1.0]], [B, C], [0.7, 0.4]))


def test_negative_weight_rejected():
    with pytest.raises(NormalizationError):
        evaluate(make([[1.0, 2.0], [2.0, 1.0]], [B, C], [1.3, -0.3]))


# -- property tests ---------------------------------------------------------

@st.composite
def instances(draw):
    m = draw(st.integers(2, 6))
    n = draw(st.integers(1, 5))
    values = [[draw(st.floats(-100, 100, allow_nan=False, width=32))
               for _ in range(n)] for _ in range(m)]
    directions = [draw(st.sampled_from([B, C])) for _ in range(n)]
    raw = [draw(st.floats(0.05, 1.0)) for _ in range(n)]
    weights = [w / sum(raw) for w in raw]
    return values, directions, weights


@given(instances())
def test_closeness_is_bounded_and_matches_oracle(instance):
    values, directions, weights = instance
    result = evaluate(make(values, directions, weights))
    assert all(0.0 <= c <= 1.0 for c in result.closeness)
    assert result.closeness == pytest.approx(
        loop_topsis(values, directions, weights), abs=1e-9)


@given(instances())
def test_ranking_is_a_permutation_sorted_by_closeness(instance):
    values, directions, weights = instance
    matrix = make(values, directions, weights)
    result = evaluate(matrix)
    assert sorted(result.ranking) == sorted(matrix.alternatives)
    order = [result.closeness[matrix.alternatives.index(a)] for a in result.ranking]
    assert all(a >= b - 1e-15 for a, b in zip(order, order[1:]))


@given(instances(), st.floats(1.5, 4.0))
def test_scaling_a_column_keeps_normalization_invariant(instance, factor):
    values, directions, weights = instance
    assume(any(any(v != 0 for v in row) for row in values))
    scaled = [[v * factor for v in row] for row in values]
    a = evaluate(make(values, directions, weights))
    b = evaluate(make(scaled, directions, weights))
    for ra, rb in zip(a.normalized, b.normalized):
        assert ra == pytest.approx(rb, abs=1e-9)
