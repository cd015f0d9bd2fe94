"""HTTP face of the question-answering engine.

All engine state is loaded once and shared read-only across requests. The
browser bundle, when present, is mounted last so API routes keep precedence.
"""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .qa import QaEngine
from .taxonomy import ConceptHierarchy, HNode
from .terms import ConceptLexicon

log = logging.getLogger(__name__)


def hierarchy_payload(hierarchy: ConceptHierarchy, lexicon: ConceptLexicon) -> dict:
    names = {c.id: c.canonical for c in lexicon}

    def node_payload(node: HNode) -> dict:
        return {
            "concept": node.concept,
            "name": names.get(node.concept) if node.concept is not None else None,
            "count": node.count,
            "children": [
                node_payload(node.children[c]) for c in sorted(node.children)
            ],
        }

    return node_payload(hierarchy.root)


def create_app(engine: QaEngine, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="ontoforge")

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request, exc):
        # contract promises a plain 400 on any malformed request body
        return JSONResponse(status_code=400, content={"detail": "malformed request body"})

    @app.post("/ask")
    async def ask(payload: dict = Body(...)):
        question = payload.get("question")
        if not isinstance(question, str) or not question.strip():
            raise HTTPException(status_code=400, detail="field 'question' must be a non-empty string")
        result = engine.answer(question)
        return {
            "status": result.status,
            "items": [
                {"concept": item.canonical, "property": item.property, "feedback": item.feedback}
                for item in result.items
            ],
        }

    @app.get("/hierarchy")
    async def hierarchy():
        if engine.hierarchy is None:
            raise HTTPException(status_code=404, detail="no hierarchy loaded")
        return hierarchy_payload(engine.hierarchy, engine.lexicon)

    @app.get("/concepts")
    async def concepts():
        return [
            {"id": c.id, "canonical": c.canonical, "synonyms": list(c.synonyms)}
            for c in engine.lexicon
        ]

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    elif static_dir is not None:
        log.warning("static ui directory %s not found; serving API only", static_dir)

    return app


def serve(
    artifacts_dir: str | Path,
    triples_path: str | Path,
    host: str = "127.0.0.1",
    port: int = 8000,
    properties_path: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> None:
    import uvicorn

    engine = QaEngine.from_artifacts(artifacts_dir, triples_path, properties_path)
    app = create_app(engine, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
