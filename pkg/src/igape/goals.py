"""AND/OR goal graph with quality requirements, clusters and contribution links.

Goals form a forest. Leaves are classified as hard goals (functional) or
quality requirements: metric-bearing benefit (NFRB) / negative (NFRN)
requirements, or purely qualitative soft goals. Hard goals contribute to
quality requirements either with a metric value (NFRB/NFRN) or a symbol
from {++, +, o, -, --} (soft goals). Clusters scope decision scenarios to a
subtree plus its own quality requirements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import CompletenessError, DomainError, UnknownReferenceError


class GoalKind(str, Enum):
    INTERMEDIATE = "intermediate"
    HARD = "hard"
    NFRB = "nfrb"
    NFRN = "nfrn"
    SOFT = "soft"


LEAF_KINDS = (GoalKind.HARD, GoalKind.NFRB, GoalKind.NFRN, GoalKind.SOFT)
QUALITY_KINDS = (GoalKind.NFRB, GoalKind.NFRN, GoalKind.SOFT)


class Decomposition(str, Enum):
    AND = "and"
    OR = "or"


class Stability(str, Enum):
    VOLATILE = "volatile"
    PRESUMABLY_STABLE = "presumably-stable"
    STABLE = "stable"


class NegotiationStatus(str, Enum):
    UNKNOWN = "unknown"
    CONFLICTING = "conflicting"
    IN_AGREEMENT = "in-agreement"
    AGREED = "agreed"


class Priority(str, Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


class ContributionSymbol(str, Enum):
    STRONG_PLUS = "++"
    PLUS = "+"
    NEUTRAL = "o"
    MINUS = "-"
    STRONG_MINUS = "--"


class DependencyKind(str, Enum):
    REQUIRES = "requires"
    CONFLICT = "conflict"


@dataclass(frozen=True)
class GoalAttributes:
    stability: Stability = Stability.STABLE
    negotiation_status: NegotiationStatus = NegotiationStatus.UNKNOWN
    priority: Priority = Priority.MEDIUM


@dataclass(frozen=True)
class ObstacleEntry:
    scenario: str
    resolution: str


@dataclass(frozen=True)
class ChangeRecord:
    date: str
    version: str
    author: str
    reason: str = ""
    subject: str = ""


@dataclass(frozen=True)
class MetricValue:
    metric_name: str
    value: float


@dataclass(frozen=True)
class ContributionLink:
    source: str  # hard goal
    target: str  # quality requirement
    payload: "MetricValue | ContributionSymbol"


@dataclass(frozen=True)
class Dependency:
    kind: DependencyKind
    source: str
    target: str
    description: str = ""


@dataclass
class Goal:
    id: str
    name: str
    kind: GoalKind
    decomposition: Decomposition | None = None
    parent: str | None = None
    children: list[str] = field(default_factory=list)
    cluster: str | None = None
    description: str = ""
    source: str = ""
    authors: str = ""
    stakeholders: str = ""
    assignment: str = ""
    attributes: GoalAttributes | None = None
    acceptance_criteria: str | None = None
    obstacles: list[ObstacleEntry] = field(default_factory=list)
    use_case_id: str | None = None
    version: str = ""
    change_history: list[ChangeRecord] = field(default_factory=list)
    references: list[str] = field(default_factory=list)

    def is_leaf(self):
        return not self.children


@dataclass
class Cluster:
    id: str
    root: str
    members: list[str]
    quality_requirements: list[str] = field(default_factory=list)


@dataclass
class GoalModel:
    goals: dict[str, Goal] = field(default_factory=dict)
    clusters: dict[str, Cluster] = field(default_factory=dict)
    contributions: list[ContributionLink] = field(default_factory=list)
    dependencies: list[Dependency] = field(default_factory=list)
    name: str = ""
    version: str = ""

    def roots(self):
        return [g for g in self.goals.values() if g.parent is None]


@dataclass(frozen=True)
class Violation:
    severity: str  # "error" | "warning"
    rule: str
    goal_id: str
    message: str


@dataclass
class RawTable:
    """Alternatives x quality-requirements table of contribution payloads."""

    alternatives: list[str]
    criteria: list[str]
    cells: list[list["MetricValue | ContributionSymbol"]]


def validate_model(model: GoalModel) -> list[Violation]:
    """Check every structural rule and return the full violation report.

    Never raises: arbitrary structurally-parseable models are accepted and
    every broken invariant becomes a report entry. Reference failures and
    structural contradictions are errors; missing prose documentation
    (description/source) is a warning. The report is ordered by
    (rule, goal id, message) so repeated runs are byte-identical.
    """
    out: list[Violation] = []

    def err(rule, goal_id, message):
        out.append(Violation("error", rule, goal_id, message))

    def warn(rule, goal_id, message):
        out.append(Violation("warning", rule, goal_id, message))

    goals = model.goals
    for gid, goal in goals.items():
        if not gid:
            err("goal-id", gid, "goal id must be a non-empty string")
        if not goal.name:
            err("goal-name", gid, "goal name must be non-empty")
        if not goal.description or not goal.source:
            warn("template-prose", gid, "description/source not documented")

        # leaf/kind coherence: one entry per goal, whichever direction broke
        if goal.children and goal.kind != GoalKind.INTERMEDIATE:
            err("kind-leaf-only", gid,
                f"kind {goal.kind.value} is leaf-only but goal has {len(goal.children)} children")
        if not goal.children and goal.kind == GoalKind.INTERMEDIATE:
            err("kind-intermediate", gid, "intermediate kind on a leaf goal")

        if goal.children and goal.decomposition is None:
            err("decomposition-children", gid, "goal has children but no decomposition kind")
        if not goal.children and goal.decomposition is not None:
            err("decomposition-children", gid,
                f"decomposition {goal.decomposition.value} on a goal without children")

        if goal.parent is not None and goal.parent not in goals:
            err("ref-resolve", gid, f"parent {goal.parent!r} does not resolve")
        for child_id in goal.children:
            child = goals.get(child_id)
            if child is None:
                err("ref-resolve", gid, f"child {child_id!r} does not resolve")
            elif child.parent != gid:
                err("parent-child", child_id,
                    f"listed as child of {gid!r} but has parent {child.parent!r}")
        if goal.parent is not None:
            parent = goals.get(goal.parent)
            if parent is not None and gid not in parent.children:
                err("parent-child", gid,
                    f"names parent {goal.parent!r} which does not list it as a child")

        if goal.cluster is not None and goal.cluster not in model.clusters:
            err("ref-resolve", gid, f"cluster {goal.cluster!r} does not resolve")

        if goal.attributes is not None and goal.children:
            err("leaf-fields", gid, "attributes are leaf-only")
        for fname, value in (("acceptance_criteria", goal.acceptance_criteria),
                             ("use_case_id", goal.use_case_id)):
            if value is not None and goal.kind != GoalKind.HARD:
                err("leaf-fields", gid, f"{fname} applies to hard goals only")
        if goal.obstacles and goal.kind != GoalKind.HARD:
            err("leaf-fields", gid, "obstacles apply to hard goals only")
        for obstacle in goal.obstacles:
            if not obstacle.scenario or not obstacle.resolution:
                err("obstacle-fields", gid, "obstacle scenario and resolution must be non-empty")

    # parent-pointer cycles: one entry per distinct cycle, keyed by its smallest id
    seen_cycles = set()
    resolved: set[str] = set()
    for gid in goals:
        if gid in resolved:
            continue
        path = []
        path_index = {}
        cur = gid
        while cur is not None and cur in goals and cur not in resolved:
            if cur in path_index:
                cycle = path[path_index[cur]:]
                key = min(cycle)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    err("forest-cycle", key,
                        "parent chain forms a cycle: " + " -> ".join(cycle + [cur]))
                break
            path_index[cur] = len(path)
            path.append(cur)
            cur = goals[cur].parent
        resolved.update(path)

    seen_pairs = set()
    for link in model.contributions:
        src = goals.get(link.source)
        tgt = goals.get(link.target)
        anchor = link.source if src is not None or link.source else link.target
        if src is None:
            err("ref-resolve", link.source, f"contribution source {link.source!r} does not resolve")
        elif src.kind != GoalKind.HARD:
            err("link-source", link.source,
                f"contribution links start at hard goals, not {src.kind.value}")
        if tgt is None:
            err("ref-resolve", link.target, f"contribution target {link.target!r} does not resolve")
        elif tgt.kind not in QUALITY_KINDS:
            err("link-target", link.target,
                f"contribution links end at quality requirements, not {tgt.kind.value}")
        elif isinstance(link.payload, MetricValue) and tgt.kind == GoalKind.SOFT:
            err("link-payload", link.target, "soft-goal links carry a symbol, not a metric value")
        elif isinstance(link.payload, ContributionSymbol) and tgt.kind != GoalKind.SOFT:
            err("link-payload", link.target,
                f"links to {tgt.kind.value} requirements carry a metric value, not a symbol")
        pair = (link.source, link.target)
        if pair in seen_pairs:
            err("link-duplicate", link.source,
                f"more than one contribution link for ({link.source}, {link.target})")
        seen_pairs.add(pair)

    for dep in model.dependencies:
        if dep.source == dep.target:
            err("dependency-self", dep.source, "dependency endpoints must differ")
        for endpoint in (dep.source, dep.target):
            if endpoint not in goals:
                err("ref-resolve", endpoint, f"dependency endpoint {endpoint!r} does not resolve")

    membership: dict[str, str] = {}
    for cid, cluster in model.clusters.items():
        member_set = set(cluster.members)
        if cluster.root not in goals:
            err("ref-resolve", cluster.root, f"cluster {cid!r} root does not resolve")
        elif cluster.root not in member_set:
            err("cluster-root", cluster.root, f"cluster {cid!r} root is not a member")
        reachable = _subtree(goals, cluster.root) if cluster.root in goals else set()
        for mid in cluster.members:
            if mid not in goals:
                err("ref-resolve", mid, f"cluster {cid!r} member does not resolve")
                continue
            if mid not in reachable:
                err("cluster-reachability", mid,
                    f"member of cluster {cid!r} is not reachable from its root")
            if mid in membership:
                err("cluster-overlap", mid,
                    f"goal belongs to clusters {membership[mid]!r} and {cid!r}")
            else:
                membership[mid] = cid
        for qid in cluster.quality_requirements:
            goal = goals.get(qid)
            if goal is None:
                err("ref-resolve", qid, f"cluster {cid!r} quality requirement does not resolve")
            elif qid not in member_set:
                err("cluster-qr", qid, f"quality requirement is not a member of cluster {cid!r}")
            elif goal.kind not in QUALITY_KINDS:
                err("cluster-qr", qid,
                    f"quality requirement has non-quality kind {goal.kind.value}")

    out.sort(key=lambda v: (v.rule, v.goal_id, v.message))
    return out


def _subtree(goals: dict[str, Goal], root: str) -> set[str]:
    seen = set()
    stack = [root]
    while stack:
        gid = stack.pop()
        if gid in seen or gid not in goals:
            continue
        seen.add(gid)
        stack.extend(goals[gid].children)
    return seen


def cluster_root_candidates(model: GoalModel, within: str | None = None) -> list[str]:
    """First-level goals eligible to root a cluster.

    Without ``within``: the children of every top-level root, in declaration
    order. With ``within``: the first-level goals under that cluster's root.
    """
    if within is None:
        out = []
        for root in model.roots():
            out.extend(root.children)
        return out
    cluster = model.clusters.get(within)
    if cluster is None:
        raise UnknownReferenceError(f"unknown cluster {within!r}")
    root = model.goals.get(cluster.root)
    if root is None:
        raise UnknownReferenceError(f"cluster {within!r} root {cluster.root!r} does not resolve")
    return list(root.children)


def contribution_table(model: GoalModel, cluster_id: str, alternatives: list[str]) -> RawTable:
    """Collect the alternatives x quality-requirements payload table of a cluster.

    Rows follow the supplied alternative order, columns the cluster's declared
    quality-requirement order. Every (alternative, requirement) pair must have
    a contribution link; a missing pair raises CompletenessError naming it.
    """
    cluster = model.clusters.get(cluster_id)
    if cluster is None:
        raise UnknownReferenceError(f"unknown cluster {cluster_id!r}")
    member_set = set(cluster.members)
    for alt in alternatives:
        goal = model.goals.get(alt)
        if goal is None:
            raise UnknownReferenceError(f"unknown alternative {alt!r}")
        if goal.kind != GoalKind.HARD or alt not in member_set:
            raise DomainError(
                f"alternative {alt!r} is not a hard-goal member of cluster {cluster_id!r}",
                code="alternative-not-in-cluster")
    by_pair = {(link.source, link.target): link.payload for link in model.contributions}
    cells = []
    for alt in alternatives:
        row = []
        for qid in cluster.quality_requirements:
            payload = by_pair.get((alt, qid))
            if payload is None:
                raise CompletenessError(
                    f"no contribution link from {alt!r} to {qid!r}",
                    pair=(alt, qid))
            row.append(payload)
        cells.append(row)
    return RawTable(list(alternatives), list(cluster.quality_requirements), cells)
