"""On-disk document format and every JSON/CSV (de)serialization.

A model document is UTF-8 JSON carrying a `format_version`, the goal
model, named criteria hierarchies and named scenarios. Serialization is
canonical: fixed key order, numbers at full precision, two-space indent,
trailing newline, so identical documents produce identical bytes and
parse(serialize(d)) is d.

Rank matrices travel as CSV with a `judge,<alt>,...` header; `#` lines
and blank lines are ignored. Reports export as markdown or CSV.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .ahp import ComparisonMatrix, ConsistencyReport, CriteriaNode
from .concordance import (
    ConcordanceResult,
    ExpertComparison,
    RankMatrix,
    check_rank_matrix,
)
from .engine import (
    Band,
    ContributionEdit,
    DecisionOutcome,
    Edit,
    IdentityEdit,
    JudgmentEdit,
    LocalWeightsEdit,
    Manual,
    PriorityBands,
    RankMove,
    Scenario,
    ScenarioKind,
    ScenarioRun,
    SelectionPolicy,
    TopK,
    WhatIfResult,
)
from .errors import FormatVersionError, RankValidityError, SyntaxDocumentError
from .goals import (
    ChangeRecord,
    Cluster,
    ContributionLink,
    ContributionSymbol,
    Decomposition,
    Dependency,
    DependencyKind,
    Goal,
    GoalAttributes,
    GoalKind,
    GoalModel,
    MetricValue,
    NegotiationStatus,
    ObstacleEntry,
    Priority,
    Stability,
)
from .reports import ReportDocument, to_csv, to_markdown
from .topsis import CriterionSpec, DecisionMatrix, Direction, TopsisResult

FORMAT_VERSION = "1.0.0"


@dataclass
class ModelDocument:
    format_version: str
    model: GoalModel
    hierarchies: dict[str, CriteriaNode] = field(default_factory=dict)
    scenarios: dict[str, Scenario] = field(default_factory=dict)
    name: str = ""
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# parsing helpers

def _fail(path: str, message: str) -> "SyntaxDocumentError":
    return SyntaxDocumentError(f"{path}: {message}")


def _as_dict(data, path: str) -> dict:
    if not isinstance(data, dict):
        raise _fail(path, f"expected an object, got {type(data).__name__}")
    return data


def _as_list(data, path: str) -> list:
    if not isinstance(data, list):
        raise _fail(path, f"expected an array, got {type(data).__name__}")
    return data


def _as_str(data, path: str) -> str:
    if not isinstance(data, str):
        raise _fail(path, f"expected a string, got {type(data).__name__}")
    return data


def _as_num(data, path: str) -> float:
    if isinstance(data, bool) or not isinstance(data, (int, float)):
        raise _fail(path, f"expected a number, got {type(data).__name__}")
    return float(data)


def _as_int(data, path: str) -> int:
    if isinstance(data, bool) or not isinstance(data, int):
        raise _fail(path, f"expected an integer, got {type(data).__name__}")
    return data


def _enum(cls, data, path: str):
    value = _as_str(data, path)
    try:
        return cls(value)
    except ValueError:
        allowed = ", ".join(repr(e.value) for e in cls)
        raise _fail(path, f"{value!r} is not one of {allowed}") from None


def _check_keys(data: dict, path: str, allowed: set[str]) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise _fail(path, f"unknown keys {unknown}")


# ---------------------------------------------------------------------------
# goal model

_GOAL_KEYS = {"id", "name", "kind", "decomposition", "parent", "children", "cluster",
              "description", "source", "authors", "stakeholders", "assignment",
              "attributes", "acceptance_criteria", "obstacles", "use_case_id",
              "version", "change_history", "references"}


def _goal_to_data(goal: Goal) -> dict:
    data: dict = {"id": goal.id, "name": goal.name, "kind": goal.kind.value}
    if goal.decomposition is not None:
        data["decomposition"] = goal.decomposition.value
    if goal.parent is not None:
        data["parent"] = goal.parent
    if goal.children:
        data["children"] = list(goal.children)
    if goal.cluster is not None:
        data["cluster"] = goal.cluster
    for key in ("description", "source", "authors", "stakeholders", "assignment"):
        value = getattr(goal, key)
        if value:
            data[key] = value
    if goal.attributes is not None:
        data["attributes"] = {
            "stability": goal.attributes.stability.value,
            "negotiation_status": goal.attributes.negotiation_status.value,
            "priority": goal.attributes.priority.value,
        }
    if goal.acceptance_criteria is not None:
        data["acceptance_criteria"] = goal.acceptance_criteria
    if goal.obstacles:
        data["obstacles"] = [{"scenario": o.scenario, "resolution": o.resolution}
                             for o in goal.obstacles]
    if goal.use_case_id is not None:
        data["use_case_id"] = goal.use_case_id
    if goal.version:
        data["version"] = goal.version
    if goal.change_history:
        data["change_history"] = [
            {"date": c.date, "version": c.version, "author": c.author,
             **({"reason": c.reason} if c.reason else {}),
             **({"subject": c.subject} if c.subject else {})}
            for c in goal.change_history]
    if goal.references:
        data["references"] = list(goal.references)
    return data


def _parse_goal(data, path: str) -> Goal:
    data = _as_dict(data, path)
    _check_keys(data, path, _GOAL_KEYS)
    attributes = None
    if "attributes" in data:
        attr = _as_dict(data["attributes"], f"{path}.attributes")
        _check_keys(attr, f"{path}.attributes",
                    {"stability", "negotiation_status", "priority"})
        attributes = GoalAttributes(
            stability=_enum(Stability, attr.get("stability", "stable"),
                            f"{path}.attributes.stability"),
            negotiation_status=_enum(NegotiationStatus,
                                     attr.get("negotiation_status", "unknown"),
                                     f"{path}.attributes.negotiation_status"),
            priority=_enum(Priority, attr.get("priority", "medium"),
                           f"{path}.attributes.priority"),
        )
    obstacles = []
    for i, entry in enumerate(_as_list(data.get("obstacles", []), f"{path}.obstacles")):
        entry = _as_dict(entry, f"{path}.obstacles[{i}]")
        _check_keys(entry, f"{path}.obstacles[{i}]", {"scenario", "resolution"})
        obstacles.append(ObstacleEntry(
            scenario=_as_str(entry.get("scenario", ""), f"{path}.obstacles[{i}].scenario"),
            resolution=_as_str(entry.get("resolution", ""),
                               f"{path}.obstacles[{i}].resolution")))
    history = []
    for i, entry in enumerate(_as_list(data.get("change_history", []),
                                       f"{path}.change_history")):
        entry = _as_dict(entry, f"{path}.change_history[{i}]")
        _check_keys(entry, f"{path}.change_history[{i}]",
                    {"date", "version", "author", "reason", "subject"})
        history.append(ChangeRecord(
            date=_as_str(entry.get("date", ""), f"{path}.change_history[{i}].date"),
            version=_as_str(entry.get("version", ""),
                            f"{path}.change_history[{i}].version"),
            author=_as_str(entry.get("author", ""),
                           f"{path}.change_history[{i}].author"),
            reason=_as_str(entry.get("reason", ""),
                           f"{path}.change_history[{i}].reason"),
            subject=_as_str(entry.get("subject", ""),
                            f"{path}.change_history[{i}].subject")))
    if "id" not in data:
        raise _fail(path, "missing 'id'")
    if "name" not in data:
        raise _fail(path, "missing 'name'")
    if "kind" not in data:
        raise _fail(path, "missing 'kind'")
    return Goal(
        id=_as_str(data["id"], f"{path}.id"),
        name=_as_str(data["name"], f"{path}.name"),
        kind=_enum(GoalKind, data["kind"], f"{path}.kind"),
        decomposition=(None if "decomposition" not in data
                       else _enum(Decomposition, data["decomposition"],
                                  f"{path}.decomposition")),
        parent=(None if "parent" not in data
                else _as_str(data["parent"], f"{path}.parent")),
        children=[_as_str(c, f"{path}.children[{i}]")
                  for i, c in enumerate(_as_list(data.get("children", []),
                                                 f"{path}.children"))],
        cluster=(None if "cluster" not in data
                 else _as_str(data["cluster"], f"{path}.cluster")),
        description=_as_str(data.get("description", ""), f"{path}.description"),
        source=_as_str(data.get("source", ""), f"{path}.source"),
        authors=_as_str(data.get("authors", ""), f"{path}.authors"),
        stakeholders=_as_str(data.get("stakeholders", ""), f"{path}.stakeholders"),
        assignment=_as_str(data.get("assignment", ""), f"{path}.assignment"),
        attributes=attributes,
        acceptance_criteria=(None if "acceptance_criteria" not in data
                             else _as_str(data["acceptance_criteria"],
                                          f"{path}.acceptance_criteria")),
        obstacles=obstacles,
        use_case_id=(None if "use_case_id" not in data
                     else _as_str(data["use_case_id"], f"{path}.use_case_id")),
        version=_as_str(data.get("version", ""), f"{path}.version"),
        change_history=history,
        references=[_as_str(r, f"{path}.references[{i}]")
                    for i, r in enumerate(_as_list(data.get("references", []),
                                                   f"{path}.references"))],
    )


def _link_to_data(link: ContributionLink) -> dict:
    data = {"source": link.source, "target": link.target}
    if isinstance(link.payload, ContributionSymbol):
        data["symbol"] = link.payload.value
    else:
        data["metric"] = link.payload.metric_name
        data["value"] = link.payload.value
    return data


def _parse_link(data, path: str) -> ContributionLink:
    data = _as_dict(data, path)
    _check_keys(data, path, {"source", "target", "symbol", "metric", "value"})
    source = _as_str(data.get("source", ""), f"{path}.source")
    target = _as_str(data.get("target", ""), f"{path}.target")
    has_symbol = "symbol" in data
    has_metric = "metric" in data or "value" in data
    if has_symbol == has_metric:
        raise _fail(path, "carry either 'symbol' or 'metric'+'value', not both")
    if has_symbol:
        payload = _enum(ContributionSymbol, data["symbol"], f"{path}.symbol")
    else:
        if "metric" not in data or "value" not in data:
            raise _fail(path, "metric payload needs both 'metric' and 'value'")
        payload = MetricValue(_as_str(data["metric"], f"{path}.metric"),
                              _as_num(data["value"], f"{path}.value"))
    return ContributionLink(source, target, payload)


def _model_to_data(model: GoalModel) -> dict:
    data: dict = {}
    if model.name:
        data["name"] = model.name
    if model.version:
        data["version"] = model.version
    data["goals"] = [_goal_to_data(g) for g in model.goals.values()]
    if model.clusters:
        data["clusters"] = [
            {"id": c.id, "root": c.root, "members": list(c.members),
             "quality_requirements": list(c.quality_requirements)}
            for c in model.clusters.values()]
    if model.contributions:
        data["contributions"] = [_link_to_data(link) for link in model.contributions]
    if model.dependencies:
        data["dependencies"] = [
            {"kind": d.kind.value, "source": d.source, "target": d.target,
             **({"description": d.description} if d.description else {})}
            for d in model.dependencies]
    return data


def _parse_model(data, path: str) -> GoalModel:
    data = _as_dict(data, path)
    _check_keys(data, path, {"name", "version", "goals", "clusters",
                             "contributions", "dependencies"})
    goals: dict[str, Goal] = {}
    for i, entry in enumerate(_as_list(data.get("goals", []), f"{path}.goals")):
        goal = _parse_goal(entry, f"{path}.goals[{i}]")
        if goal.id in goals:
            raise _fail(f"{path}.goals[{i}]", f"duplicate goal id {goal.id!r}")
        goals[goal.id] = goal
    clusters: dict[str, Cluster] = {}
    for i, entry in enumerate(_as_list(data.get("clusters", []), f"{path}.clusters")):
        cpath = f"{path}.clusters[{i}]"
        entry = _as_dict(entry, cpath)
        _check_keys(entry, cpath, {"id", "root", "members", "quality_requirements"})
        for key in ("id", "root", "members"):
            if key not in entry:
                raise _fail(cpath, f"missing {key!r}")
        cluster = Cluster(
            id=_as_str(entry["id"], f"{cpath}.id"),
            root=_as_str(entry["root"], f"{cpath}.root"),
            members=[_as_str(m, f"{cpath}.members[{j}]")
                     for j, m in enumerate(_as_list(entry["members"],
                                                    f"{cpath}.members"))],
            quality_requirements=[
                _as_str(q, f"{cpath}.quality_requirements[{j}]")
                for j, q in enumerate(_as_list(entry.get("quality_requirements", []),
                                               f"{cpath}.quality_requirements"))],
        )
        if cluster.id in clusters:
            raise _fail(cpath, f"duplicate cluster id {cluster.id!r}")
        clusters[cluster.id] = cluster
    contributions = [
        _parse_link(entry, f"{path}.contributions[{i}]")
        for i, entry in enumerate(_as_list(data.get("contributions", []),
                                           f"{path}.contributions"))]
    dependencies = []
    for i, entry in enumerate(_as_list(data.get("dependencies", []),
                                       f"{path}.dependencies")):
        dpath = f"{path}.dependencies[{i}]"
        entry = _as_dict(entry, dpath)
        _check_keys(entry, dpath, {"kind", "source", "target", "description"})
        dependencies.append(Dependency(
            kind=_enum(DependencyKind, entry.get("kind", ""), f"{dpath}.kind"),
            source=_as_str(entry.get("source", ""), f"{dpath}.source"),
            target=_as_str(entry.get("target", ""), f"{dpath}.target"),
            description=_as_str(entry.get("description", ""), f"{dpath}.description")))
    return GoalModel(
        goals=goals, clusters=clusters, contributions=contributions,
        dependencies=dependencies,
        name=_as_str(data.get("name", ""), f"{path}.name"),
        version=_as_str(data.get("version", ""), f"{path}.version"))


# ---------------------------------------------------------------------------
# criteria hierarchies

def _node_to_data(node: CriteriaNode) -> dict:
    data: dict = {"id": node.id}
    if node.weights is not None:
        data["weights"] = list(node.weights)
    if node.judgments is not None:
        data["judgments"] = [list(row) for row in node.judgments.entries]
    if node.children:
        data["children"] = [_node_to_data(c) for c in node.children]
    return data


def _parse_node(data, path: str) -> CriteriaNode:
    data = _as_dict(data, path)
    _check_keys(data, path, {"id", "weights", "judgments", "children"})
    if "id" not in data:
        raise _fail(path, "missing 'id'")
    children = [_parse_node(c, f"{path}.children[{i}]")
                for i, c in enumerate(_as_list(data.get("children", []),
                                               f"{path}.children"))]
    weights = None
    if "weights" in data:
        weights = [_as_num(w, f"{path}.weights[{i}]")
                   for i, w in enumerate(_as_list(data["weights"], f"{path}.weights"))]
    judgments = None
    if "judgments" in data:
        entries = [[_as_num(v, f"{path}.judgments[{i}][{j}]")
                    for j, v in enumerate(_as_list(row, f"{path}.judgments[{i}]"))]
                   for i, row in enumerate(_as_list(data["judgments"],
                                                    f"{path}.judgments"))]
        judgments = ComparisonMatrix([c.id for c in children], entries)
    return CriteriaNode(id=_as_str(data["id"], f"{path}.id"), children=children,
                        weights=weights, judgments=judgments)


def parse_comparison_matrix(data, path: str = "matrix") -> ComparisonMatrix:
    """Read a {labels?, entries} object; labels default to 1-based indexes."""
    data = _as_dict(data, path)
    _check_keys(data, path, {"labels", "entries"})
    if "entries" not in data:
        raise _fail(path, "missing 'entries'")
    entries = [[_as_num(v, f"{path}.entries[{i}][{j}]")
                for j, v in enumerate(_as_list(row, f"{path}.entries[{i}]"))]
               for i, row in enumerate(_as_list(data["entries"], f"{path}.entries"))]
    if "labels" in data:
        labels = [_as_str(l, f"{path}.labels[{i}]")
                  for i, l in enumerate(_as_list(data["labels"], f"{path}.labels"))]
    else:
        labels = [str(i + 1) for i in range(len(entries))]
    if len(labels) != len(entries):
        raise _fail(path, f"{len(labels)} labels for {len(entries)} entry rows")
    return ComparisonMatrix(labels, entries)


# ---------------------------------------------------------------------------
# scenarios and policies

def _policy_to_data(policy: SelectionPolicy) -> dict:
    if isinstance(policy, TopK):
        return {"kind": "top-k", "k": policy.k}
    if isinstance(policy, PriorityBands):
        return {"kind": "priority-bands",
                "bands": [{"min_priority": b.min_priority, "take": b.take}
                          for b in policy.bands]}
    return {"kind": "manual", "rationale": policy.rationale,
            "chosen": {gid: list(picks) for gid, picks in policy.chosen.items()}}


def parse_policy(data, path: str = "policy") -> SelectionPolicy:
    data = _as_dict(data, path)
    kind = _as_str(data.get("kind", ""), f"{path}.kind")
    if kind == "top-k":
        _check_keys(data, path, {"kind", "k"})
        return TopK(_as_int(data.get("k", 0), f"{path}.k"))
    if kind == "priority-bands":
        _check_keys(data, path, {"kind", "bands"})
        bands = []
        for i, entry in enumerate(_as_list(data.get("bands", []), f"{path}.bands")):
            entry = _as_dict(entry, f"{path}.bands[{i}]")
            _check_keys(entry, f"{path}.bands[{i}]", {"min_priority", "take"})
            take = entry.get("take")
            bands.append(Band(
                _as_num(entry.get("min_priority", 0), f"{path}.bands[{i}].min_priority"),
                None if take is None else _as_int(take, f"{path}.bands[{i}].take")))
        return PriorityBands(tuple(bands)) if bands else PriorityBands()
    if kind == "manual":
        _check_keys(data, path, {"kind", "rationale", "chosen"})
        chosen_data = _as_dict(data.get("chosen", {}), f"{path}.chosen")
        chosen = {
            gid: tuple(_as_str(a, f"{path}.chosen[{gid!r}][{i}]")
                       for i, a in enumerate(_as_list(picks, f"{path}.chosen[{gid!r}]")))
            for gid, picks in chosen_data.items()}
        return Manual(chosen, _as_str(data.get("rationale", ""), f"{path}.rationale"))
    raise _fail(f"{path}.kind", f"{kind!r} is not one of 'top-k', "
                                "'priority-bands', 'manual'")


def _scenario_to_data(scenario: Scenario) -> dict:
    data: dict = {
        "kind": scenario.kind.value,
        "cluster": scenario.cluster,
        "alternatives": list(scenario.alternatives),
        "hierarchy": scenario.hierarchy,
    }
    if scenario.goals:
        data["goals"] = list(scenario.goals)
    if scenario.goal_weights is not None:
        data["goal_weights"] = list(scenario.goal_weights)
    if scenario.goal_judgments is not None:
        data["goal_judgments"] = [list(row) for row in scenario.goal_judgments.entries]
    if scenario.policy is not None:
        data["policy"] = _policy_to_data(scenario.policy)
    return data


def _parse_scenario(name: str, data, path: str) -> Scenario:
    data = _as_dict(data, path)
    _check_keys(data, path, {"kind", "cluster", "alternatives", "hierarchy",
                             "goals", "goal_weights", "goal_judgments", "policy"})
    for key in ("kind", "cluster", "alternatives", "hierarchy"):
        if key not in data:
            raise _fail(path, f"missing {key!r}")
    goals = [_as_str(g, f"{path}.goals[{i}]")
             for i, g in enumerate(_as_list(data.get("goals", []), f"{path}.goals"))]
    goal_weights = None
    if "goal_weights" in data:
        goal_weights = [_as_num(w, f"{path}.goal_weights[{i}]")
                        for i, w in enumerate(_as_list(data["goal_weights"],
                                                       f"{path}.goal_weights"))]
    goal_judgments = None
    if "goal_judgments" in data:
        entries = [[_as_num(v, f"{path}.goal_judgments[{i}][{j}]")
                    for j, v in enumerate(_as_list(row, f"{path}.goal_judgments[{i}]"))]
                   for i, row in enumerate(_as_list(data["goal_judgments"],
                                                    f"{path}.goal_judgments"))]
        goal_judgments = ComparisonMatrix(list(goals), entries)
    return Scenario(
        name=name,
        kind=_enum(ScenarioKind, data["kind"], f"{path}.kind"),
        cluster=_as_str(data["cluster"], f"{path}.cluster"),
        alternatives=[_as_str(a, f"{path}.alternatives[{i}]")
                      for i, a in enumerate(_as_list(data["alternatives"],
                                                     f"{path}.alternatives"))],
        hierarchy=_as_str(data["hierarchy"], f"{path}.hierarchy"),
        goals=goals,
        goal_weights=goal_weights,
        goal_judgments=goal_judgments,
        policy=(parse_policy(data["policy"], f"{path}.policy")
                if "policy" in data else None),
    )


# ---------------------------------------------------------------------------
# whole documents

def document_to_data(doc: ModelDocument) -> dict:
    data: dict = {"format_version": doc.format_version}
    if doc.name:
        data["name"] = doc.name
    if doc.notes:
        data["notes"] = list(doc.notes)
    data["model"] = _model_to_data(doc.model)
    if doc.hierarchies:
        data["hierarchies"] = {name: _node_to_data(node)
                               for name, node in doc.hierarchies.items()}
    if doc.scenarios:
        data["scenarios"] = {name: _scenario_to_data(s)
                             for name, s in doc.scenarios.items()}
    return data


def serialize_document(doc: ModelDocument) -> str:
    return json.dumps(document_to_data(doc), indent=2, ensure_ascii=False) + "\n"


def _check_format_version(version: str) -> None:
    parts = version.split(".")
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise FormatVersionError(
            f"format_version {version!r} is not a MAJOR.MINOR.PATCH string")
    if parts[0] != FORMAT_VERSION.split(".")[0]:
        raise FormatVersionError(
            f"format_version {version!r} is not supported; this build reads "
            f"{FORMAT_VERSION.split('.')[0]}.x.x")


def parse_document_data(data) -> ModelDocument:
    data = _as_dict(data, "document")
    _check_keys(data, "document", {"format_version", "name", "notes", "model",
                                   "hierarchies", "scenarios"})
    if "format_version" not in data:
        raise FormatVersionError("document carries no format_version")
    version = _as_str(data["format_version"], "document.format_version")
    _check_format_version(version)
    if "model" not in data:
        raise _fail("document", "missing 'model'")
    model = _parse_model(data["model"], "document.model")
    hierarchies = {
        _as_str(name, "document.hierarchies key"): _parse_node(
            node, f"document.hierarchies[{name!r}]")
        for name, node in _as_dict(data.get("hierarchies", {}),
                                   "document.hierarchies").items()}
    scenarios = {
        name: _parse_scenario(name, entry, f"document.scenarios[{name!r}]")
        for name, entry in _as_dict(data.get("scenarios", {}),
                                    "document.scenarios").items()}
    return ModelDocument(
        format_version=version,
        model=model,
        hierarchies=hierarchies,
        scenarios=scenarios,
        name=_as_str(data.get("name", ""), "document.name"),
        notes=[_as_str(n, f"document.notes[{i}]")
               for i, n in enumerate(_as_list(data.get("notes", []),
                                              "document.notes"))],
    )


def parse_document(text: str) -> ModelDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SyntaxDocumentError(exc.msg, line=exc.lineno, column=exc.colno,
                                  position=exc.pos) from None
    return parse_document_data(data)


def load_model(path: "str | Path") -> ModelDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def save_model(doc: ModelDocument, path: "str | Path") -> None:
    Path(path).write_text(serialize_document(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# rank matrices (CSV)

def parse_rank_rows(lines: "list[tuple[int, str]]") -> RankMatrix:
    """Build a RankMatrix from (line_number, csv_line) pairs, header first."""
    if not lines:
        raise SyntaxDocumentError("no header row of alternative labels", position=0)
    header_no, header_line = lines[0]
    header = next(csv.reader([header_line]))
    if len(header) < 2:
        raise SyntaxDocumentError(
            f"line {header_no}: header must read 'judge,<alternative>,...'")
    alternatives = [h.strip() for h in header[1:]]
    n = len(alternatives)
    judges, rows = [], []
    for line_no, line in lines[1:]:
        fields = next(csv.reader([line]))
        if len(fields) != n + 1:
            raise SyntaxDocumentError(
                f"line {line_no}: expected {n + 1} fields, got {len(fields)}")
        judge = fields[0].strip()
        row = []
        for raw in fields[1:]:
            try:
                row.append(int(raw.strip()))
            except ValueError:
                raise SyntaxDocumentError(
                    f"line {line_no}: rank {raw.strip()!r} is not an integer"
                ) from None
        seen = set()
        for rank in row:
            if not 1 <= rank <= n:
                raise RankValidityError(
                    f"line {line_no}: judge {judge!r} gave out-of-range rank {rank}")
            if rank in seen:
                raise RankValidityError(
                    f"line {line_no}: judge {judge!r} gave rank {rank} twice")
            seen.add(rank)
        judges.append(judge)
        rows.append(row)
    matrix = RankMatrix(judges, alternatives, rows)
    check_rank_matrix(matrix)
    return matrix


def import_rank_matrix(path: "str | Path") -> RankMatrix:
    """Read a judge-by-alternative rank CSV; `#` and blank lines are skipped."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [(no, line) for no, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.lstrip().startswith("#")]
    return parse_rank_rows(lines)


def parse_rank_matrix_data(data, path: str = "ranks") -> RankMatrix:
    """Read a {judges, alternatives, ranks} JSON object."""
    data = _as_dict(data, path)
    _check_keys(data, path, {"judges", "alternatives", "ranks"})
    for key in ("judges", "alternatives", "ranks"):
        if key not in data:
            raise _fail(path, f"missing {key!r}")
    matrix = RankMatrix(
        judges=[_as_str(j, f"{path}.judges[{i}]")
                for i, j in enumerate(_as_list(data["judges"], f"{path}.judges"))],
        alternatives=[_as_str(a, f"{path}.alternatives[{i}]")
                      for i, a in enumerate(_as_list(data["alternatives"],
                                                     f"{path}.alternatives"))],
        ranks=[[_as_int(r, f"{path}.ranks[{i}][{j}]")
                for j, r in enumerate(_as_list(row, f"{path}.ranks[{i}]"))]
               for i, row in enumerate(_as_list(data["ranks"], f"{path}.ranks"))],
    )
    return matrix


# ---------------------------------------------------------------------------
# decision matrices (JSON bodies)

def parse_decision_matrix(data, path: str = "matrix") -> DecisionMatrix:
    data = _as_dict(data, path)
    _check_keys(data, path, {"alternatives", "criteria", "values"})
    for key in ("alternatives", "criteria", "values"):
        if key not in data:
            raise _fail(path, f"missing {key!r}")
    criteria = []
    for i, entry in enumerate(_as_list(data["criteria"], f"{path}.criteria")):
        cpath = f"{path}.criteria[{i}]"
        entry = _as_dict(entry, cpath)
        _check_keys(entry, cpath, {"id", "direction", "weight"})
        criteria.append(CriterionSpec(
            id=_as_str(entry.get("id", ""), f"{cpath}.id"),
            direction=_enum(Direction, entry.get("direction", ""),
                            f"{cpath}.direction"),
            weight=_as_num(entry.get("weight", 0), f"{cpath}.weight")))
    return DecisionMatrix(
        alternatives=[_as_str(a, f"{path}.alternatives[{i}]")
                      for i, a in enumerate(_as_list(data["alternatives"],
                                                     f"{path}.alternatives"))],
        criteria=criteria,
        values=[[_as_num(v, f"{path}.values[{i}][{j}]")
                 for j, v in enumerate(_as_list(row, f"{path}.values[{i}]"))]
                for i, row in enumerate(_as_list(data["values"], f"{path}.values"))],
    )


# ---------------------------------------------------------------------------
# edits

def parse_edit(data, path: str = "edit") -> Edit:
    data = _as_dict(data, path)
    kind = _as_str(data.get("kind", ""), f"{path}.kind")
    if kind == "identity":
        _check_keys(data, path, {"kind"})
        return IdentityEdit()
    if kind == "contribution":
        _check_keys(data, path, {"kind", "source", "target", "symbol",
                                 "metric", "value"})
        link = _parse_link({k: v for k, v in data.items() if k != "kind"}, path)
        return ContributionEdit(link.source, link.target, link.payload)
    if kind == "local-weights":
        _check_keys(data, path, {"kind", "criterion", "weights"})
        return LocalWeightsEdit(
            criterion=_as_str(data.get("criterion", ""), f"{path}.criterion"),
            weights=tuple(_as_num(w, f"{path}.weights[{i}]")
                          for i, w in enumerate(_as_list(data.get("weights", []),
                                                         f"{path}.weights"))))
    if kind == "judgment":
        _check_keys(data, path, {"kind", "criterion", "row", "col", "value"})
        return JudgmentEdit(
            criterion=_as_str(data.get("criterion", ""), f"{path}.criterion"),
            row=_as_int(data.get("row", -1), f"{path}.row"),
            col=_as_int(data.get("col", -1), f"{path}.col"),
            value=_as_num(data.get("value", 0), f"{path}.value"))
    raise _fail(f"{path}.kind", f"{kind!r} is not one of 'identity', "
                                "'contribution', 'local-weights', 'judgment'")


def edit_to_data(edit: Edit) -> dict:
    if isinstance(edit, IdentityEdit):
        return {"kind": "identity"}
    if isinstance(edit, ContributionEdit):
        data = {"kind": "contribution", "source": edit.source, "target": edit.target}
        if isinstance(edit.payload, ContributionSymbol):
            data["symbol"] = edit.payload.value
        else:
            data["metric"] = edit.payload.metric_name
            data["value"] = edit.payload.value
        return data
    if isinstance(edit, LocalWeightsEdit):
        return {"kind": "local-weights", "criterion": edit.criterion,
                "weights": list(edit.weights)}
    return {"kind": "judgment", "criterion": edit.criterion,
            "row": edit.row, "col": edit.col, "value": edit.value}


# ---------------------------------------------------------------------------
# result serializations (one-way, API responses and report bodies)

def consistency_to_data(report: ConsistencyReport) -> dict:
    return {"lambda_max": report.lambda_max, "ci": report.ci, "cr": report.cr,
            "acceptable": report.acceptable}


def topsis_result_to_data(result: TopsisResult) -> dict:
    return {
        "normalized": result.normalized,
        "weighted": result.weighted,
        "ideal": result.ideal,
        "anti_ideal": result.anti_ideal,
        "s_plus": result.s_plus,
        "s_minus": result.s_minus,
        "closeness": result.closeness,
        "ranking": list(result.ranking),
        "warnings": list(result.warnings),
    }


def outcome_to_data(outcome: DecisionOutcome) -> dict:
    return {
        "scenario": outcome.scenario.value,
        "goal": outcome.goal,
        "chosen": list(outcome.chosen),
        "rejected": list(outcome.rejected),
        "goal_priorities": outcome.goal_priorities,
        "warnings": list(outcome.warnings),
        "ranking": topsis_result_to_data(outcome.ranking),
        "trace": [{"step": s.step, "summary": s.summary, "data": s.data}
                  for s in outcome.trace],
    }


def run_to_data(run: ScenarioRun) -> dict:
    data: dict = {"scenario": run.scenario, "kind": run.kind.value}
    if run.outcome is not None:
        data["outcome"] = outcome_to_data(run.outcome)
    if run.per_goal is not None:
        data["per_goal"] = {gid: outcome_to_data(o) for gid, o in run.per_goal.items()}
    return data


def rank_move_to_data(move: RankMove) -> dict:
    return {"alternative": move.alternative, "before": move.before,
            "after": move.after}


def whatif_to_data(result: WhatIfResult) -> dict:
    return {
        "baseline": run_to_data(result.baseline),
        "edited": run_to_data(result.edited),
        "rank_moves": [rank_move_to_data(m) for m in result.rank_moves],
        "closeness_deltas": result.closeness_deltas,
    }


def concordance_to_data(result: ConcordanceResult) -> dict:
    return {
        "rank_sums": result.rank_sums,
        "mean_rank_sum": result.mean_rank_sum,
        "s": result.s,
        "w": result.w,
        "good_agreement": result.good_agreement,
        "consensus_order": list(result.consensus_order),
        "consensus_ties": result.consensus_ties,
    }


def comparison_to_data(comparison: ExpertComparison) -> dict:
    def row(r):
        return {"judge": r.judge, "chosen": r.chosen, "rejected": r.rejected,
                "ranking": list(r.ranking), "full_match": r.full_match}

    return {
        "method": row(comparison.method_row),
        "experts": [row(r) for r in comparison.expert_rows],
        "chose_same": comparison.chose_same,
        "rejected_same": comparison.rejected_same,
        "full_matches": comparison.full_matches,
        "concordance": concordance_to_data(comparison.concordance),
    }


# ---------------------------------------------------------------------------
# report export

def export_report(report: ReportDocument, path: "str | Path",
                  flavor: str = "markdown") -> None:
    """Write a report; flavor is 'markdown' (readable) or 'csv' (tabular)."""
    if flavor == "markdown":
        text = to_markdown(report)
    elif flavor == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown report flavor {flavor!r}")
    Path(path).write_text(text, encoding="utf-8")
