"""HTTP face of the material property store.

GET /materials?names=a,b,c&cursor=...  -> one page of at most 30 records,
in request order, with unknown names reported per page rather than dropped.
PUT /materials/{name} upserts a record. GET /health for liveness.
"""
from __future__ import annotations

import base64
from urllib.parse import unquote

from fastapi import FastAPI, Query, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..errors import ValidationError
from .records import BATCH_SIZE, MaterialRecord, ReviewStatus, load_dataset
from .store import MaterialStore


class MaterialPayload(BaseModel):
    canonical_name: str | None = None
    conductivity: float
    density: float
    specific_heat: float
    ee_coeff: float
    ew_coeff: float = 0.0  # optional; water data lags energy data
    source_tag: str = ""
    review_status: str = "Unreviewed"


def _encode_cursor(offset: int) -> str:
    return base64.urlsafe_b64encode(f"o={offset}".encode()).decode()


def _decode_cursor(cursor: str) -> int:
    try:
        text = base64.urlsafe_b64decode(cursor.encode()).decode()
        if not text.startswith("o="):
            raise ValueError(text)
        return int(text[2:])
    except Exception as exc:
        raise ValueError(f"bad cursor {cursor!r}") from exc


def create_app(store: MaterialStore | None = None, seed_dataset: bool = True) -> FastAPI:
    if store is None:
        store = MaterialStore(":memory:")
    if seed_dataset and store.count() == 0:
        store.seed(load_dataset())

    app = FastAPI(title="material property service")
    app.state.store = store

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "materials": store.count()}

    @app.get("/materials")
    def query_materials(
        names: str = Query(..., description="comma-separated material names"),
        cursor: str | None = None,
    ):
        # Each element is individually percent-encoded, so a literal comma
        # inside a material name survives the comma-separated wire format.
        requested = [unquote(n).strip() for n in names.split(",") if n.strip()]
        if not requested:
            return JSONResponse(
                status_code=400, content={"error": "names must be non-empty"}
            )
        offset = 0
        if cursor:
            try:
                offset = _decode_cursor(cursor)
            except ValueError:
                return JSONResponse(status_code=400, content={"error": "bad cursor"})
        if offset < 0 or offset >= len(requested):
            return JSONResponse(status_code=400, content={"error": "cursor out of range"})

        window = requested[offset : offset + BATCH_SIZE]
        found, missing = store.get_many(window)
        next_cursor = None
        if offset + BATCH_SIZE < len(requested):
            next_cursor = _encode_cursor(offset + BATCH_SIZE)
        return {
            "items": [rec.to_json() for rec in found],
            "missing": missing,
            "next_cursor": next_cursor,
        }

    @app.get("/materials/names")
    def list_names() -> dict:
        return {"names": store.all_names()}

    @app.put("/materials/{name}")
    def upsert_material(name: str, payload: MaterialPayload, response: Response):
        try:
            record = MaterialRecord(
                canonical_name=payload.canonical_name or name,
                conductivity=payload.conductivity,
                density=payload.density,
                specific_heat=payload.specific_heat,
                ee_coeff=payload.ee_coeff,
                ew_coeff=payload.ew_coeff,
                source_tag=payload.source_tag,
                review_status=ReviewStatus(payload.review_status),
            )
        except (ValidationError, ValueError) as exc:
            return JSONResponse(status_code=422, content={"error": str(exc)})
        stored = store.upsert(record)
        response.status_code = 200
        return stored.to_json()

    return app
