"""Pairwise-comparison priorities and their propagation down a criteria tree.

Local weights come either from a reciprocal judgment matrix (principal
eigenvector by power iteration, geometric mean of rows as a cross-check
method) or are supplied directly. Global weights multiply local weights
along the path from the tree root to each leaf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceError,
    JudgmentError,
    NormalizationError,
    StructureError,
)

#: Saaty's random consistency index by matrix dimension.
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24,
                7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}

CR_THRESHOLD = 0.10
RECIPROCITY_TOL = 1e-9
POWER_TOL = 1e-12
POWER_BUDGET = 10_000


@dataclass
class ComparisonMatrix:
    """Square reciprocal matrix of positive judgment ratios over `labels`."""

    labels: list[str]
    entries: list[list[float]]

    @property
    def n(self):
        return len(self.labels)


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    cr: float
    acceptable: bool


@dataclass
class CriteriaNode:
    """One criterion in the weighting tree.

    Internal nodes carry exactly one local source for their children's
    weights: either ``weights`` (given, child order) or ``judgments`` (a
    comparison matrix over the children). Leaves carry neither.
    """

    id: str
    children: list["CriteriaNode"] = field(default_factory=list)
    weights: list[float] | None = None
    judgments: ComparisonMatrix | None = None


def check_matrix(matrix: ComparisonMatrix) -> None:
    """Raise JudgmentError unless the matrix is positive, unit-diagonal and reciprocal."""
    n = matrix.n
    if n < 1:
        raise JudgmentError("comparison matrix needs at least one criterion")
    if len(matrix.entries) != n or any(len(row) != n for row in matrix.entries):
        raise JudgmentError(f"entries are not a {n}x{n} square")
    for i in range(n):
        for j in range(n):
            a = matrix.entries[i][j]
            if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 0):
                raise JudgmentError(f"entry [{i}][{j}] = {a!r} is not a positive real")
    for i in range(n):
        if abs(matrix.entries[i][i] - 1.0) > RECIPROCITY_TOL:
            raise JudgmentError(f"diagonal entry [{i}][{i}] = {matrix.entries[i][i]} is not 1")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(matrix.entries[i][j] * matrix.entries[j][i] - 1.0) > RECIPROCITY_TOL:
                raise JudgmentError(
                    f"entries [{i}][{j}] and [{j}][{i}] are not reciprocal")


def derive_priorities(matrix: ComparisonMatrix,
                      method: str = "eigen") -> tuple[list[float], ConsistencyReport]:
    """Derive the normalized priority vector and its consistency report.

    ``method`` is "eigen" (principal eigenvector via power iteration) or
    "geometric" (normalized geometric mean of rows). A consistency ratio
    above 0.10 only flips ``acceptable``; it never fails.
    """
    check_matrix(matrix)
    a = np.asarray(matrix.entries, dtype=float)
    n = matrix.n
    if method == "eigen":
        w = _power_iterate(a)
    elif method == "geometric":
        w = np.exp(np.log(a).mean(axis=1))
        w = w / w.sum()
    else:
        raise ValueError(f"unknown priority method {method!r}")
    aw = a @ w
    lambda_max = float(np.mean(aw / w))
    ci = (lambda_max - n) / (n - 1) if n >= 2 else 0.0
    ri = RANDOM_INDEX.get(n, RANDOM_INDEX[10])
    cr = ci / ri if n >= 3 and ri > 0 else 0.0
    report = ConsistencyReport(lambda_max, ci, cr, acceptable=cr <= CR_THRESHOLD)
    return [float(x) for x in w], report


def _power_iterate(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    w = np.full(n, 1.0 / n)
    for _ in range(POWER_BUDGET):
        nxt = a @ w
        nxt = nxt / nxt.sum()
        if float(np.max(np.abs(nxt - w))) <= POWER_TOL:
            return nxt
        w = nxt
    raise ConvergenceError(
        f"power iteration did not converge in {POWER_BUDGET} iterations",
        last_iterate=[float(x) for x in w])


def prioritize_goals(source: "ComparisonMatrix | list[float]",
                     method: str = "eigen") -> tuple[list[float], ConsistencyReport | None]:
    """Weights for sibling functional goals: derived from a matrix or given directly."""
    if isinstance(source, ComparisonMatrix):
        return derive_priorities(source, method=method)
    weights = [float(x) for x in source]
    total = sum(weights)
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(f"given weights sum to {total}, not 1")
    if any(w < 0 for w in weights):
        raise NormalizationError("given weights must be non-negative")
    return weights, None


def local_weights(node: CriteriaNode,
                  method: str = "eigen") -> tuple[list[float], ConsistencyReport | None]:
    """Resolve an internal node's child weights from its declared source."""
    if not node.children:
        raise StructureError(f"criterion {node.id!r} is a leaf and has no local weights")
    if (node.weights is None) == (node.judgments is None):
        raise StructureError(
            f"criterion {node.id!r} must carry exactly one of given weights or judgments")
    if node.weights is not None:
        if len(node.weights) != len(node.children):
            raise StructureError(
                f"criterion {node.id!r} has {len(node.weights)} weights "
                f"for {len(node.children)} children")
        total = sum(node.weights)
        if abs(total - 1.0) > 1e-9:
            raise NormalizationError(
                f"given weights of criterion {node.id!r} sum to {total}, not 1")
        if any(w < 0 for w in node.weights):
            raise NormalizationError(f"criterion {node.id!r} has a negative given weight")
        return [float(w) for w in node.weights], None
    if node.judgments.n != len(node.children):
        raise StructureError(
            f"criterion {node.id!r} judgments are {node.judgments.n}x{node.judgments.n} "
            f"for {len(node.children)} children")
    return derive_priorities(node.judgments, method=method)


def global_weights(root: CriteriaNode, method: str = "eigen") -> dict[str, float]:
    """Global weight of every leaf: the product of local weights on its root path.

    Leaf order in the result follows a depth-first walk of the tree, which is
    the natural reading order of the hierarchy.
    """
    out: dict[str, float] = {}
    seen: set[str] = set()

    def walk(node: CriteriaNode, acc: float):
        if node.id in seen:
            raise StructureError(f"criterion id {node.id!r} appears twice in the hierarchy")
        seen.add(node.id)
        if not node.children:
            if node.weights is not None or node.judgments is not None:
                raise StructureError(f"leaf criterion {node.id!r} must not carry a local source")
            out[node.id] = acc
            return
        weights, _ = local_weights(node, method=method)
        for child, w in zip(node.children, weights):
            walk(child, acc * w)

    walk(root, 1.0)
    return out


def consistency_reports(root: CriteriaNode,
                        method: str = "eigen") -> dict[str, ConsistencyReport]:
    """Consistency report of every judgment-bearing node, keyed by criterion id."""
    out: dict[str, ConsistencyReport] = {}

    def walk(node: CriteriaNode):
        if node.children and node.judgments is not None:
            _, report = local_weights(node, method=method)
            out[node.id] = report
        for child in node.children:
            walk(child)

    walk(root)
    return out
