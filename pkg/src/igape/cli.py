"""Command-line front end.

Exit codes: 0 success, 1 domain errors (rule violations, infeasible
policies), 2 usage and document/I-O errors. Results go to stdout,
diagnostics to stderr, and identical inputs always produce identical
output bytes.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import engine, persistence, reports
from .concordance import kendall_w
from .errors import DocumentError, DomainError, UnknownReferenceError
from .goals import validate_model
from .reports import round_to, truncate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igape",
        description="Goal-model decision workbench: criteria weighting, "
                    "alternative ranking, selection and rank agreement.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document against every rule")
    p.add_argument("model", help="path to a .igape.json document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("weights", help="global criteria weights of a hierarchy")
    p.add_argument("model")
    p.add_argument("--hierarchy", required=True, help="hierarchy name in the document")
    p.add_argument("--method", choices=("eigen", "geometric"), default="eigen")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("rank", help="closeness ranking for a scenario")
    p.add_argument("model")
    p.add_argument("--scenario", required=True)
    p.add_argument("--method", choices=("eigen", "geometric"), default="eigen")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("decide", help="run a scenario and report its selections")
    p.add_argument("model")
    p.add_argument("--scenario", required=True)
    p.add_argument("--method", choices=("eigen", "geometric"), default="eigen")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("concord", help="rank agreement over a judge CSV")
    p.add_argument("ranks", help="CSV: header 'judge,<alt>,...', one row per judge")
    p.add_argument("--threshold", type=float, default=0.70,
                   help="good-agreement cutoff (default 0.70)")
    p.set_defaults(func=cmd_concord)

    p = sub.add_parser("report", help="write markdown, CSV and chart for a scenario")
    p.add_argument("model")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--method", choices=("eigen", "geometric"), default="eigen")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="serve the HTTP API for a model document")
    p.add_argument("--model", required=True)
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("IGAPE_PORT", "8000")))
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1


def cmd_validate(args) -> int:
    doc = persistence.load_model(args.model)
    violations = validate_model(doc.model)
    for v in violations:
        print(f"{v.severity}\t{v.rule}\t{v.goal_id}\t{v.message}")
    errors = sum(1 for v in violations if v.severity == "error")
    warnings = len(violations) - errors
    print(f"{errors} error(s), {warnings} warning(s)", file=sys.stderr)
    return 1 if errors else 0


def _hierarchy(doc, name):
    node = doc.hierarchies.get(name)
    if node is None:
        raise UnknownReferenceError(f"document has no hierarchy {name!r}")
    return node


def _scenario(doc, name):
    scenario = doc.scenarios.get(name)
    if scenario is None:
        raise UnknownReferenceError(f"document has no scenario {name!r}")
    return scenario


def cmd_weights(args) -> int:
    doc = persistence.load_model(args.model)
    stage = engine.resolve_weight_stage(_hierarchy(doc, args.hierarchy), args.method)
    for leaf, weight in stage.weights.items():
        print(f"{leaf}\t{truncate(weight)}")
    for warning in stage.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def _run(doc, args) -> engine.ScenarioRun:
    scenario = _scenario(doc, args.scenario)
    hierarchy = _hierarchy(doc, scenario.hierarchy)
    return engine.run_scenario(doc.model, hierarchy, scenario, method=args.method)


def _closeness_by_alternative(run: engine.ScenarioRun) -> "list[tuple[str, float]]":
    result = run.shared_ranking()
    outcome = run.outcome or next(iter(run.per_goal.values()))
    matrix_step = next(s for s in outcome.trace if s.step == "decision-matrix")
    closeness = dict(zip(matrix_step.data["alternatives"], result.closeness))
    return [(alt, closeness[alt]) for alt in result.ranking]


def _print_ranking(run: engine.ScenarioRun) -> None:
    for position, (alt, closeness) in enumerate(_closeness_by_alternative(run), 1):
        print(f"{position}\t{alt}\t{round_to(closeness, 4)}")


def _print_warnings(run: engine.ScenarioRun) -> None:
    outcome = run.outcome or next(iter(run.per_goal.values()))
    for warning in outcome.warnings:
        print(f"warning: {warning}", file=sys.stderr)


def cmd_rank(args) -> int:
    run = _run(persistence.load_model(args.model), args)
    _print_ranking(run)
    _print_warnings(run)
    return 0


def cmd_decide(args) -> int:
    run = _run(persistence.load_model(args.model), args)
    if run.outcome is not None:
        print(f"chosen: {', '.join(run.outcome.chosen)}")
        print(f"rejected: {', '.join(run.outcome.rejected)}")
        _print_ranking(run)
    else:
        first = next(iter(run.per_goal.values()))
        print("goal priorities:")
        for gid, priority in first.goal_priorities.items():
            print(f"\t{gid}\t{truncate(priority)}")
        print("ranking:")
        _print_ranking(run)
        print("selections:")
        for gid, outcome in run.per_goal.items():
            print(f"\t{gid}\t{', '.join(outcome.chosen)}")
    _print_warnings(run)
    return 0


def cmd_concord(args) -> int:
    matrix = persistence.import_rank_matrix(args.ranks)
    result = kendall_w(matrix, threshold=args.threshold)
    sums = "\t".join(f"{alt}={int(total)}"
                     for alt, total in zip(matrix.alternatives, result.rank_sums))
    print(f"rank sums:\t{sums}")
    s = result.s
    print(f"s = {int(s) if s.is_integer() else s!r}")
    verdict = "good agreement" if result.good_agreement else "weak agreement"
    print(f"W = {round_to(result.w, 3)} ({verdict})")
    print(f"consensus:\t{', '.join(result.consensus_order)}")
    return 0


def cmd_report(args) -> int:
    doc = persistence.load_model(args.model)
    run = _run(doc, args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = reports.decision_report(run)
    md_path = out_dir / f"{args.scenario}.md"
    csv_path = out_dir / f"{args.scenario}.csv"
    png_path = out_dir / f"{args.scenario}.png"
    persistence.export_report(report, md_path, flavor="markdown")
    persistence.export_report(report, csv_path, flavor="csv")
    from .figures import closeness_chart

    closeness_chart(_closeness_by_alternative(run),
                    f"Closeness by alternative ({args.scenario})", png_path)
    for path in (md_path, csv_path, png_path):
        print(path)
    _print_warnings(run)
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.model, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
