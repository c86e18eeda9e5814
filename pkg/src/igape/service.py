"""HTTP API over one loaded model document.

Single-analyst service: one document per process, read endpoints run
freely, mutations (model replacement, what-if staging and commit) are
serialized behind a lock. Domain rule violations answer 422 with the
violated rule's code; unreadable bodies answer 400; replacing the model
while a what-if edit is staged answers 409.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import ahp, engine, persistence, topsis
from .concordance import kendall_w
from .errors import DocumentError, DomainError, SyntaxDocumentError, UnknownReferenceError
from .goals import validate_model
from .persistence import ModelDocument


@dataclass
class StagedEdit:
    scenario: str
    edit: engine.Edit


@dataclass
class Session:
    document: ModelDocument
    id: str = field(default_factory=lambda: uuid.uuid4().hex)
    staged: StagedEdit | None = None
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _method_of(payload: "dict | None") -> str:
    method = (payload or {}).get("method", "eigen")
    if method not in ("eigen", "geometric"):
        raise SyntaxDocumentError(f"method {method!r} is not 'eigen' or 'geometric'")
    return method


def _scenario_and_hierarchy(doc: ModelDocument, name: str):
    scenario = doc.scenarios.get(name)
    if scenario is None:
        raise UnknownReferenceError(f"document has no scenario {name!r}")
    hierarchy = doc.hierarchies.get(scenario.hierarchy)
    if hierarchy is None:
        raise UnknownReferenceError(
            f"scenario {name!r} names unknown hierarchy {scenario.hierarchy!r}")
    return scenario, hierarchy


def create_app(document: ModelDocument) -> FastAPI:
    app = FastAPI(title="igape", docs_url=None, redoc_url=None)
    session = Session(document)
    app.state.session = session

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        body = {"code": exc.code, "message": str(exc)}
        if exc.details:
            body["details"] = {k: v for k, v in exc.details.items()}
        return JSONResponse(status_code=422, content={"error": body})

    @app.exception_handler(DocumentError)
    async def _document_error(request: Request, exc: DocumentError):
        return JSONResponse(status_code=400,
                            content={"error": {"code": "document",
                                               "message": str(exc)}})

    @app.exception_handler(RequestValidationError)
    async def _malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": {"code": "malformed-body",
                                               "message": str(exc)}})

    @app.get("/api/model")
    def get_model():
        return persistence.document_to_data(session.document)

    @app.put("/api/model")
    def put_model(payload: dict = Body(...)):
        with session.lock:
            if session.staged is not None:
                return JSONResponse(status_code=409, content={"error": {
                    "code": "whatif-in-flight",
                    "message": "a what-if edit is staged for this document",
                    "retry": "commit or discard the staged edit, then retry",
                }})
            doc = persistence.parse_document_data(payload)
            violations = validate_model(doc.model)
            errors = [v for v in violations if v.severity == "error"]
            if errors:
                return JSONResponse(status_code=422, content={"error": {
                    "code": "validation",
                    "message": f"model violates {len(errors)} structural rule(s)",
                    "violations": [
                        {"severity": v.severity, "rule": v.rule,
                         "goal": v.goal_id, "message": v.message}
                        for v in violations],
                }})
            session.document = doc
            session.history.clear()
            return {"replaced": True,
                    "warnings": [
                        {"severity": v.severity, "rule": v.rule,
                         "goal": v.goal_id, "message": v.message}
                        for v in violations]}

    @app.post("/api/ahp/priorities")
    def ahp_priorities(payload: dict = Body(...)):
        matrix = persistence.parse_comparison_matrix(
            {k: v for k, v in payload.items() if k != "method"})
        weights, report = ahp.derive_priorities(matrix, method=_method_of(payload))
        return {"labels": matrix.labels, "weights": weights,
                "consistency": persistence.consistency_to_data(report)}

    @app.post("/api/topsis/evaluate")
    def topsis_evaluate(payload: dict = Body(...)):
        matrix = persistence.parse_decision_matrix(payload)
        return persistence.topsis_result_to_data(topsis.evaluate(matrix))

    @app.post("/api/scenario/{name}/run")
    def scenario_run(name: str, payload: "dict | None" = Body(None)):
        scenario, hierarchy = _scenario_and_hierarchy(session.document, name)
        run = engine.run_scenario(session.document.model, hierarchy, scenario,
                                  method=_method_of(payload))
        return persistence.run_to_data(run)

    @app.post("/api/whatif")
    def whatif(payload: dict = Body(...)):
        name = payload.get("scenario")
        if not isinstance(name, str):
            raise SyntaxDocumentError("whatif body needs a 'scenario' name")
        edit = persistence.parse_edit(payload.get("edit", {}))
        method = _method_of(payload)
        with session.lock:
            scenario, hierarchy = _scenario_and_hierarchy(session.document, name)
            result = engine.what_if(session.document.model, hierarchy, scenario,
                                    edit, method=method)
            session.staged = StagedEdit(name, edit)
            return persistence.whatif_to_data(result)

    @app.post("/api/whatif/commit")
    def whatif_commit():
        with session.lock:
            staged = session.staged
            if staged is None:
                raise DomainError("no what-if edit is staged", code="edit-rejected")
            scenario, hierarchy = _scenario_and_hierarchy(session.document,
                                                          staged.scenario)
            if isinstance(staged.edit, engine.ContributionEdit):
                session.document.model = engine.apply_contribution_edit(
                    session.document.model, staged.edit)
            elif isinstance(staged.edit, (engine.LocalWeightsEdit,
                                          engine.JudgmentEdit)):
                session.document.hierarchies[scenario.hierarchy] = \
                    engine.apply_hierarchy_edit(hierarchy, staged.edit)
            data = persistence.edit_to_data(staged.edit)
            session.history.append({"scenario": staged.scenario, "edit": data})
            session.staged = None
            return {"committed": data, "scenario": staged.scenario}

    @app.post("/api/whatif/discard")
    def whatif_discard():
        with session.lock:
            had_edit = session.staged is not None
            session.staged = None
            return {"discarded": had_edit}

    @app.get("/api/session")
    def get_session():
        staged = None
        if session.staged is not None:
            staged = {"scenario": session.staged.scenario,
                      "edit": persistence.edit_to_data(session.staged.edit)}
        return {"id": session.id, "staged": staged, "history": session.history}

    @app.post("/api/concordance")
    def concordance(payload: dict = Body(...)):
        threshold = payload.get("threshold", 0.70)
        if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
            raise SyntaxDocumentError("threshold must be a number")
        matrix = persistence.parse_rank_matrix_data(
            {k: v for k, v in payload.items() if k != "threshold"})
        return persistence.concordance_to_data(
            kendall_w(matrix, threshold=float(threshold)))

    return app


def serve(model_path: str, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Load a document and serve the API over it until interrupted."""
    import uvicorn

    app = create_app(persistence.load_model(model_path))
    uvicorn.run(app, host=host, port=port)
