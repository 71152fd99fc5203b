"""HTTP app implementing the generation/embedding wire protocol.

Endpoints (JSON over HTTP):

- ``POST /generate`` and ``POST /qg/generate``: question-generation model.
- ``POST /summarize/generate``: summarization model.
- ``POST /embed``: token embeddings from the embedding model.
- ``GET /healthz``: liveness plus the loaded model ids.

Requests that are not valid JSON, or that fail schema validation, get a
400; a model call blowing up gets a 500 with the message.
"""

from __future__ import annotations

import torch
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import ShimConfig
from .engines import EmbeddingEngine, Seq2SeqEngine


class GenerateIn(BaseModel):
    input_text: str
    max_output_tokens: int = Field(default=64, ge=1, le=1024)
    beam: int = Field(default=4, ge=1, le=32)


class GenerateOut(BaseModel):
    output_text: str
    model_id: str


class EmbedIn(BaseModel):
    texts: list[str]


class EmbedOut(BaseModel):
    tokens: list[list[str]]
    embeddings: list[list[list[float]]]


def create_app(config: ShimConfig) -> FastAPI:
    """Load every configured checkpoint and build the service.

    Loading happens here, before the server ever binds: a bad checkpoint
    means no app.
    """
    torch.manual_seed(config.seed)
    qg = Seq2SeqEngine(config.qg_model, config.device)
    summarizer = Seq2SeqEngine(config.summarization_model, config.device)
    embedder = EmbeddingEngine(config.embedding_model, config.device)

    app = FastAPI(title="qgforge-shim")
    app.state.engines = {"qg": qg, "summarization": summarizer, "embedding": embedder}

    @app.exception_handler(RequestValidationError)
    async def validation_to_400(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def run_generate(engine: Seq2SeqEngine, body: GenerateIn) -> GenerateOut:
        if not body.input_text.strip():
            raise HTTPException(status_code=400, detail="input_text must be non-empty")
        try:
            text = engine.generate(body.input_text, body.max_output_tokens, body.beam)
        except Exception as exc:
            raise HTTPException(status_code=500, detail=f"generation failed: {exc}") from exc
        return GenerateOut(output_text=text, model_id=engine.model_id)

    @app.post("/generate", response_model=GenerateOut)
    def generate(body: GenerateIn):
        return run_generate(qg, body)

    @app.post("/qg/generate", response_model=GenerateOut)
    def qg_generate(body: GenerateIn):
        return run_generate(qg, body)

    @app.post("/summarize/generate", response_model=GenerateOut)
    def summarize_generate(body: GenerateIn):
        return run_generate(summarizer, body)

    @app.post("/embed", response_model=EmbedOut)
    def embed(body: EmbedIn):
        try:
            tokens, embeddings = embedder.embed(body.texts)
        except Exception as exc:
            raise HTTPException(status_code=500, detail=f"embedding failed: {exc}") from exc
        return EmbedOut(tokens=tokens, embeddings=embeddings)

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "models": {
                "qg": qg.model_id,
                "summarization": summarizer.model_id,
                "embedding": embedder.model_id,
            },
        }

    return app
