"""HTTP surface: GET /health and POST /embed."""

from __future__ import annotations

from contextlib import asynccontextmanager
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .model import EmbeddingModel, ImageDecodeError, PREPROCESSING

MAX_BATCH = 256


class EmbedRequest(BaseModel):
    images: List[str]


def create_app(preset: str = "vit_b32", seed: int = 0,
               defer_load: bool = False) -> FastAPI:
    """Build the service app. The model loads at startup; until then (or
    with defer_load for testing) /health answers 503 and /embed refuses."""

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if not defer_load:
            app.state.model = EmbeddingModel.load(preset=preset, seed=seed)
        yield

    app = FastAPI(lifespan=lifespan)
    app.state.model = None

    def loaded_model() -> Optional[EmbeddingModel]:
        return getattr(app.state, "model", None)

    @app.get("/health")
    def health():
        model = loaded_model()
        if model is None:
            return JSONResponse(status_code=503,
                                content={"status": "loading"})
        return {
            "status": "ok",
            "model_name": model.model_name,
            "dim": model.dim,
            "preprocessing": PREPROCESSING,
        }

    @app.post("/embed")
    def embed(request: EmbedRequest):
        model = loaded_model()
        if model is None:
            raise HTTPException(status_code=503, detail="model not loaded")
        if len(request.images) == 0:
            raise HTTPException(status_code=400,
                                detail="images list must not be empty")
        if len(request.images) > MAX_BATCH:
            raise HTTPException(
                status_code=413,
                detail=f"batch of {len(request.images)} exceeds the "
                       f"{MAX_BATCH}-image limit")
        try:
            vectors = model.embed_b64(request.images)
        except ImageDecodeError as err:
            raise HTTPException(status_code=400,
                                detail={"index": err.index,
                                        "error": err.reason})
        return {"dim": model.dim, "vectors": vectors}

    return app
