"""Ranking alternatives by relative closeness to the ideal solution.

Vector normalization, weighting, ideal / anti-ideal selection per criterion
direction, Euclidean separation, and the closeness coefficient
s- / (s+ + s-). Rank 1 is the highest closeness; ties keep declaration
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DegenerateInstanceError, NormalizationError, StructureError


class Direction(str, Enum):
    BENEFIT = "benefit"
    COST = "cost"


@dataclass(frozen=True)
class CriterionSpec:
    id: str
    direction: Direction
    weight: float


@dataclass
class DecisionMatrix:
    alternatives: list[str]
    criteria: list[CriterionSpec]
    values: list[list[float]]  # rows follow alternatives, columns follow criteria


@dataclass
class TopsisResult:
    normalized: list[list[float]]
    weighted: list[list[float]]
    ideal: list[float]
    anti_ideal: list[float]
    s_plus: list[float]
    s_minus: list[float]
    closeness: list[float]
    ranking: list[str]  # alternative ids, best first
    warnings: list[str] = field(default_factory=list)


def check_matrix(matrix: DecisionMatrix) -> None:
    """Raise unless dimensions line up and criterion weights are a distribution."""
    m, n = len(matrix.alternatives), len(matrix.criteria)
    if n < 1:
        raise StructureError("decision matrix needs at least one criterion")
    if len(matrix.values) != m or any(len(row) != n for row in matrix.values):
        raise StructureError(f"values are not a {m}x{n} grid")
    for row in matrix.values:
        for cell in row:
            if not np.isfinite(cell):
                raise StructureError(f"cell value {cell!r} is not a finite real")
    if any(c.weight < 0 for c in matrix.criteria):
        raise NormalizationError("criterion weights must be non-negative")
    total = sum(c.weight for c in matrix.criteria)
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(f"criterion weights sum to {total}, not 1")


def normalize(matrix: DecisionMatrix) -> list[list[float]]:
    """Vector-normalize each column: r = x / sqrt(sum of squares).

    An all-zero column stays all zero instead of dividing by zero.
    """
    check_matrix(matrix)
    return _normalize(np.asarray(matrix.values, dtype=float)).tolist()


def _normalize(x: np.ndarray) -> np.ndarray:
    norms = np.sqrt((x * x).sum(axis=0))
    safe = np.where(norms > 0.0, norms, 1.0)
    return x / safe


def evaluate(matrix: DecisionMatrix) -> TopsisResult:
    """Full closeness evaluation and ranking of a decision matrix."""
    check_matrix(matrix)
    if len(matrix.alternatives) < 2:
        raise DegenerateInstanceError(
            "ranking needs at least two alternatives; with one, ideal and "
            "anti-ideal coincide")
    x = np.asarray(matrix.values, dtype=float)
    warnings = []
    zero_cols = np.flatnonzero((x * x).sum(axis=0) == 0.0)
    for j in zero_cols:
        warnings.append(
            f"criterion {matrix.criteria[j].id!r} is all zeros and cannot "
            "discriminate between alternatives")

    r = _normalize(x)
    w = np.asarray([c.weight for c in matrix.criteria], dtype=float)
    v = r * w

    benefit = np.asarray([c.direction == Direction.BENEFIT for c in matrix.criteria])
    ideal = np.where(benefit, v.max(axis=0), v.min(axis=0))
    anti = np.where(benefit, v.min(axis=0), v.max(axis=0))

    s_plus = np.sqrt(((v - ideal) ** 2).sum(axis=1))
    s_minus = np.sqrt(((v - anti) ** 2).sum(axis=1))
    denom = s_plus + s_minus
    closeness = np.where(denom > 0.0, s_minus / np.where(denom > 0.0, denom, 1.0), 0.5)

    order = sorted(range(len(matrix.alternatives)), key=lambda i: (-closeness[i], i))
    return TopsisResult(
        normalized=r.tolist(),
        weighted=v.tolist(),
        ideal=ideal.tolist(),
        anti_ideal=anti.tolist(),
        s_plus=s_plus.tolist(),
        s_minus=s_minus.tolist(),
        closeness=closeness.tolist(),
        ranking=[matrix.alternatives[i] for i in order],
        warnings=warnings,
    )
