"""Agreement between complete rankings: Kendall's coefficient of concordance.

W = s / ((k^2 / 12)(N^3 - N)) over a k x N rank matrix without ties, where
s is the squared deviation of rank sums from their mean. W of at least 0.70
counts as good agreement. Also builds the judge-by-judge comparison of a
method outcome against a panel of expert rankings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlignmentError, DegenerateInstanceError, RankValidityError

GOOD_AGREEMENT = 0.70


@dataclass
class RankMatrix:
    judges: list[str]
    alternatives: list[str]
    ranks: list[list[int]]  # rows follow judges; each row is a permutation of 1..N


@dataclass
class ConcordanceResult:
    rank_sums: list[float]
    mean_rank_sum: float
    s: float
    w: float
    good_agreement: bool
    consensus_order: list[str]  # ascending rank sum, best first
    consensus_ties: bool


@dataclass(frozen=True)
class ExpertJudgment:
    """One judge's complete best-first ranking, with optional explicit picks."""

    judge: str
    ranking: list[str]
    chosen: str | None = None
    rejected: str | None = None

    def effective_chosen(self):
        return self.chosen if self.chosen is not None else self.ranking[0]

    def effective_rejected(self):
        return self.rejected if self.rejected is not None else self.ranking[-1]


@dataclass
class ComparisonRow:
    judge: str
    chosen: str
    rejected: str
    ranking: list[str]
    full_match: bool


@dataclass
class ExpertComparison:
    method_row: ComparisonRow
    expert_rows: list[ComparisonRow]
    chose_same: int
    rejected_same: int
    full_matches: int
    concordance: ConcordanceResult
    matrix: "RankMatrix | None" = field(repr=False, default=None)


def check_rank_matrix(matrix: RankMatrix) -> None:
    """Raise unless every judge row is a complete tie-free ranking."""
    k, n = len(matrix.judges), len(matrix.alternatives)
    if k < 2:
        raise DegenerateInstanceError("concordance needs at least two judges")
    if n < 2:
        raise DegenerateInstanceError("concordance needs at least two alternatives")
    if len(matrix.ranks) != k:
        raise RankValidityError(f"{k} judges but {len(matrix.ranks)} rank rows")
    for judge, row in zip(matrix.judges, matrix.ranks):
        if len(row) != n:
            raise RankValidityError(f"judge {judge!r} ranked {len(row)} of {n} alternatives")
        seen = set()
        for rank in row:
            if not isinstance(rank, int) or isinstance(rank, bool):
                raise RankValidityError(f"judge {judge!r} gave non-integer rank {rank!r}")
            if not 1 <= rank <= n:
                raise RankValidityError(f"judge {judge!r} gave out-of-range rank {rank}")
            if rank in seen:
                raise RankValidityError(f"judge {judge!r} gave rank {rank} twice")
            seen.add(rank)


def kendall_w(matrix: RankMatrix, threshold: float = GOOD_AGREEMENT) -> ConcordanceResult:
    """Kendall's W with rank sums, consensus order and the agreement verdict."""
    check_rank_matrix(matrix)
    k, n = len(matrix.judges), len(matrix.alternatives)
    rank_sums = [float(sum(row[j] for row in matrix.ranks)) for j in range(n)]
    mean = sum(rank_sums) / n
    s = sum((r - mean) ** 2 for r in rank_sums)
    w = s / ((k * k / 12.0) * (n ** 3 - n))
    order = sorted(range(n), key=lambda j: (rank_sums[j], j))
    ties = len(set(rank_sums)) < n
    return ConcordanceResult(
        rank_sums=rank_sums,
        mean_rank_sum=mean,
        s=s,
        w=w,
        good_agreement=w >= threshold,
        consensus_order=[matrix.alternatives[j] for j in order],
        consensus_ties=ties,
    )


def ranks_from_order(alternatives: list[str], ranking: list[str], judge: str) -> list[int]:
    """Turn a best-first order into a rank row over `alternatives`."""
    if sorted(ranking) != sorted(alternatives):
        raise AlignmentError(
            f"judge {judge!r} ranked {sorted(ranking)}, expected {sorted(alternatives)}")
    position = {alt: i + 1 for i, alt in enumerate(ranking)}
    return [position[alt] for alt in alternatives]


def expert_comparison(method_judge: str,
                      method_ranking: list[str],
                      alternatives: list[str],
                      experts: list[ExpertJudgment],
                      threshold: float = GOOD_AGREEMENT) -> ExpertComparison:
    """Compare the method's ranking with an expert panel.

    Every ranking must cover exactly `alternatives`. The concordance is
    computed over all rows, the method's first.
    """
    judges = [method_judge]
    rows = [ranks_from_order(alternatives, method_ranking, method_judge)]
    method_row = ComparisonRow(
        judge=method_judge,
        chosen=method_ranking[0],
        rejected=method_ranking[-1],
        ranking=list(method_ranking),
        full_match=True,
    )
    expert_rows = []
    chose_same = rejected_same = full_matches = 0
    for expert in experts:
        judges.append(expert.judge)
        rows.append(ranks_from_order(alternatives, expert.ranking, expert.judge))
        chosen = expert.effective_chosen()
        rejected = expert.effective_rejected()
        for pick in (chosen, rejected):
            if pick not in alternatives:
                raise AlignmentError(f"judge {expert.judge!r} picked unknown {pick!r}")
        full = list(expert.ranking) == list(method_ranking)
        expert_rows.append(ComparisonRow(expert.judge, chosen, rejected,
                                         list(expert.ranking), full))
        chose_same += chosen == method_row.chosen
        rejected_same += rejected == method_row.rejected
        full_matches += full
    matrix = RankMatrix(judges, list(alternatives), rows)
    return ExpertComparison(
        method_row=method_row,
        expert_rows=expert_rows,
        chose_same=chose_same,
        rejected_same=rejected_same,
        full_matches=full_matches,
        concordance=kendall_w(matrix, threshold=threshold),
        matrix=matrix,
    )
