"""Report documents and their renderings.

A report is a structured list of sections; each numeric cell keeps both its
display string and its full-precision value. The markdown flavor is for
reading, the CSV flavor for downstream scripting: every table row appears
with full-precision numbers, section headings become ``#`` comment lines.

Weights display truncated to 4 decimal places (0.057410496 shows as
0.0574); truncation, not rounding, so displayed weights never overstate a
criterion. W displays at 3 decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal

from .concordance import ConcordanceResult, RankMatrix
from .engine import DecisionOutcome, ScenarioRun
from .goals import Violation


def truncate(value: float, places: int = 4) -> str:
    """Cut off at `places` decimals without rounding; keeps the sign."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_DOWN))


def round_to(value: float, places: int) -> str:
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class Cell:
    text: str
    value: float | None = None

    @staticmethod
    def of(value: float, display: str | None = None) -> "Cell":
        return Cell(display if display is not None else repr(value), float(value))


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Cell]]


@dataclass
class Section:
    heading: str
    paragraphs: list[str] = field(default_factory=list)
    table: Table | None = None


@dataclass
class ReportDocument:
    kind: str  # validation | weights | ranking | decision | concordance
    title: str
    sections: list[Section]


def _text(s: str) -> Cell:
    return Cell(s)


def validation_report(model_name: str, violations: list[Violation]) -> ReportDocument:
    errors = sum(1 for v in violations if v.severity == "error")
    warnings = len(violations) - errors
    summary = Section(
        "Summary",
        [f"{errors} error(s), {warnings} warning(s)." if violations
         else "No rule violations."])
    sections = [summary]
    if violations:
        sections.append(Section("Violations", table=Table(
            ["severity", "rule", "goal", "message"],
            [[_text(v.severity), _text(v.rule), _text(v.goal_id), _text(v.message)]
             for v in violations])))
    return ReportDocument("validation", f"Validation of {model_name}", sections)


def weights_report(hierarchy_name: str, weights: dict[str, float],
                   warnings: list[str]) -> ReportDocument:
    rows = [[_text(leaf), Cell.of(w, truncate(w))] for leaf, w in weights.items()]
    total = sum(weights.values())
    sections = [Section(
        "Global weights",
        [f"Hierarchy {hierarchy_name!r}: {len(weights)} weighted criteria, "
         f"sum {truncate(total)} at display precision."],
        Table(["criterion", "global weight"], rows))]
    if warnings:
        sections.append(Section("Warnings", [f"- {w}" for w in warnings]))
    return ReportDocument("weights", f"Criteria weights ({hierarchy_name})", sections)


def _ranking_section(outcome: DecisionOutcome) -> Section:
    result = outcome.ranking
    matrix_step = next(s for s in outcome.trace if s.step == "decision-matrix")
    alternatives = matrix_step.data["alternatives"]
    closeness = {alt: result.closeness[i] for i, alt in enumerate(alternatives)}
    rows = []
    for position, alt in enumerate(result.ranking, start=1):
        rows.append([
            Cell(str(position), float(position)),
            _text(alt),
            Cell.of(closeness[alt], round_to(closeness[alt], 4)),
        ])
    return Section(
        "Ranking",
        ["Alternatives ordered by closeness to the ideal solution; "
         "ties keep declaration order."],
        Table(["rank", "alternative", "closeness"], rows))


def _trace_sections(outcome: DecisionOutcome) -> list[Section]:
    sections = []
    for step in outcome.trace:
        if step.step == "weights":
            weights = step.data["global_weights"]
            sections.append(Section(
                "Criteria weights",
                [step.summary],
                Table(["criterion", "global weight"],
                      [[_text(cid), Cell.of(w, truncate(w))]
                       for cid, w in weights.items()])))
        elif step.step == "decision-matrix":
            criteria = step.data["criteria"]
            columns = ["alternative"] + [c["id"] for c in criteria]
            rows = [[_text("direction")] +
                    [_text(c["direction"]) for c in criteria]]
            for alt, values in zip(step.data["alternatives"], step.data["values"]):
                rows.append([_text(alt)] + [Cell.of(v) for v in values])
            sections.append(Section("Decision matrix", [step.summary],
                                    Table(columns, rows)))
    return sections


def ranking_report(run: ScenarioRun) -> ReportDocument:
    outcome = run.outcome or next(iter(run.per_goal.values()))
    sections = [_ranking_section(outcome)] + _trace_sections(outcome)
    if outcome.warnings:
        sections.append(Section("Warnings", [f"- {w}" for w in outcome.warnings]))
    return ReportDocument("ranking", f"Ranking for scenario {run.scenario!r}", sections)


def decision_report(run: ScenarioRun) -> ReportDocument:
    sections: list[Section] = []
    if run.outcome is not None:
        outcome = run.outcome
        sections.append(Section("Decision", [
            f"Chosen: {', '.join(outcome.chosen)}.",
            f"Rejected: {', '.join(outcome.rejected)}.",
        ]))
        sections.append(_ranking_section(outcome))
        sections.extend(_trace_sections(outcome))
        if outcome.warnings:
            sections.append(Section("Warnings", [f"- {w}" for w in outcome.warnings]))
    else:
        first = next(iter(run.per_goal.values()))
        priority_rows = [
            [_text(gid), Cell.of(p, truncate(p))]
            for gid, p in first.goal_priorities.items()]
        sections.append(Section("Goal priorities", table=Table(
            ["goal", "priority"], priority_rows)))
        sections.append(_ranking_section(first))
        selection_rows = [
            [_text(gid), _text(", ".join(outcome.chosen))]
            for gid, outcome in run.per_goal.items()]
        sections.append(Section("Selections", table=Table(
            ["goal", "alternatives chosen"], selection_rows)))
        sections.extend(_trace_sections(first))
        if first.warnings:
            sections.append(Section("Warnings", [f"- {w}" for w in first.warnings]))
    return ReportDocument("decision", f"Decision for scenario {run.scenario!r}", sections)


def concordance_report(matrix: RankMatrix, result: ConcordanceResult) -> ReportDocument:
    columns = ["judge"] + list(matrix.alternatives)
    rows = [[_text(judge)] + [Cell(str(r), float(r)) for r in row]
            for judge, row in zip(matrix.judges, matrix.ranks)]
    rows.append([_text("Sum of ranks")] +
                [Cell.of(r, round_to(r, 0)) for r in result.rank_sums])
    verdict = "good agreement" if result.good_agreement else "weak agreement"
    lines = [
        f"s = {round_to(result.s, 0)}",
        f"W = {round_to(result.w, 3)} ({verdict})",
        f"Consensus order: {', '.join(result.consensus_order)}."
        + (" Ties in rank sums broken by declaration order."
           if result.consensus_ties else ""),
    ]
    return ReportDocument("concordance", "Rank agreement", [
        Section("Ranks", table=Table(columns, rows)),
        Section("Agreement", lines),
    ])


def to_markdown(doc: ReportDocument) -> str:
    out = [f"# {doc.title}", ""]
    for section in doc.sections:
        out.append(f"## {section.heading}")
        out.append("")
        for paragraph in section.paragraphs:
            out.append(paragraph)
        if section.paragraphs:
            out.append("")
        if section.table is not None:
            out.append("| " + " | ".join(section.table.columns) + " |")
            out.append("|" + "|".join(" --- " for _ in section.table.columns) + "|")
            for row in section.table.rows:
                out.append("| " + " | ".join(cell.text for cell in row) + " |")
            out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def to_csv(doc: ReportDocument) -> str:
    out = [f"# {doc.title}"]
    for section in doc.sections:
        out.append(f"# {section.heading}")
        for paragraph in section.paragraphs:
            out.append(f"# {paragraph}")
        if section.table is not None:
            out.append(",".join(_csv_field(c) for c in section.table.columns))
            for row in section.table.rows:
                out.append(",".join(
                    _csv_field(_csv_number(cell.value) if cell.value is not None
                               else cell.text)
                    for cell in row))
    return "\n".join(out) + "\n"


def _csv_number(value: float) -> str:
    return str(int(value)) if value.is_integer() else repr(value)


def _csv_field(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
