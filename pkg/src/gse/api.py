"""HTTP face of the comparison engine, consumed by the browser UI.

POST /runs executes the same code path as the CLI (baseline plus one run
per substitution plan) and caches the response body by request hash, so an
iterating user gets byte-identical replies for identical configurations.
GET /models and GET /weather list the fixtures the server was pointed at;
GET /materials lists the property store's names for the plan editor.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse

from .errors import ConfigError, EngineError, PlanError, UnresolvedMaterial
from .gbxml import parse_gbxml_file
from .model import classify_model
from .reports import report_payload
from .run import (
    RunConfig,
    SubstitutionPlan,
    apply_plan,
    load_materials_source,
    run_model,
)
from .thermal import Terrain, ThermalSettings
from .weather import TimeStepProtocol, parse_epw_file

_SETTINGS_FIELDS = {
    "alpha": float,
    "heat_setpoint": float,
    "cool_setpoint": float,
    "interior_film_resistance": float,
    "exterior_film_base": float,
    "exterior_film_wind_coeff": float,
    "infiltration_ach": float,
    "solar_absorptance_opaque": float,
    "default_shgc": float,
    "shadows_enabled": bool,
    "initial_temperature": float,
    "max_step_seconds": float,
}


def settings_from_json(payload: dict | None) -> ThermalSettings:
    payload = dict(payload or {})
    kwargs = {}
    if "terrain" in payload:
        kwargs["terrain"] = Terrain(payload.pop("terrain"))
    if "protocol" in payload:
        kwargs["protocol"] = TimeStepProtocol(payload.pop("protocol"))
    for key, cast in _SETTINGS_FIELDS.items():
        if key in payload:
            value = payload.pop(key)
            kwargs[key] = None if value is None else cast(value)
    if payload:
        raise ConfigError(f"unknown settings fields: {sorted(payload)}")
    settings = ThermalSettings(**kwargs)
    settings.validate()
    return settings


def _listing(directory: Path, suffixes: tuple[str, ...]) -> dict[str, Path]:
    if not directory.is_dir():
        return {}
    found: dict[str, Path] = {}
    for path in sorted(directory.rglob("*")):
        if path.suffix.lower() in suffixes and path.is_file():
            found[path.stem] = path
    return found


def create_app(
    fixtures_dir, materials_spec: str = "", output_dir=None
) -> FastAPI:
    fixtures_dir = Path(fixtures_dir)
    models = _listing(fixtures_dir, (".xml", ".gbxml"))
    weather = _listing(fixtures_dir, (".epw",))
    source = load_materials_source(materials_spec)

    app = FastAPI(title="building energy comparison engine")
    app.state.run_cache: dict[str, bytes] = {}
    app.state.models = models
    app.state.weather = weather

    @app.get("/health")
    def health():
        return {"status": "ok", "models": len(models), "weather": len(weather)}

    @app.get("/models")
    def list_models():
        return {
            "models": [
                {"id": mid, "name": mid, "path": str(path)}
                for mid, path in models.items()
            ]
        }

    @app.get("/weather")
    def list_weather():
        return {
            "weather": [
                {"id": wid, "name": wid, "path": str(path)}
                for wid, path in weather.items()
            ]
        }

    @app.get("/materials")
    def list_materials():
        names = source.all_names() if hasattr(source, "all_names") else []
        return {"names": names}

    @app.post("/runs")
    def post_runs(body: dict):
        canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
        run_id = hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
        cached = app.state.run_cache.get(run_id)
        if cached is not None:
            return Response(
                content=cached,
                media_type="application/json",
                headers={"X-Cache": "hit", "X-Run-Id": run_id},
            )

        model_id = body.get("model_id")
        weather_id = body.get("weather_id")
        if model_id not in models:
            return _bad(f"unknown model_id {model_id!r}")
        if weather_id not in weather:
            return _bad(f"unknown weather_id {weather_id!r}")
        try:
            settings = settings_from_json(body.get("settings"))
            plans = [SubstitutionPlan.from_json(p) for p in body.get("plans", [])]
        except (PlanError, ConfigError, ValueError) as exc:
            return _bad(str(exc))

        years = int(body.get("years", 100))
        config = RunConfig(
            model_path=models[model_id],
            weather_path=weather[weather_id],
            thermal=settings,
            lifespan_years=years,
            output_dir=output_dir,
        )
        try:
            model = classify_model(parse_gbxml_file(config.model_path))
            for plan in plans:
                for cid, _ in plan.substitutions:
                    if cid not in model.constructions:
                        return _bad(
                            f"plan {plan.label!r} targets unknown construction {cid!r}"
                        )
            year = parse_epw_file(config.weather_path)
            results = [run_model("baseline", model, year, config, source)]
            for plan in plans:
                results.append(
                    run_model(
                        plan.label, apply_plan(model, plan), year, config, source
                    )
                )
        except UnresolvedMaterial as exc:
            return JSONResponse(
                status_code=422,
                content={"error": "unresolved materials", "missing": exc.missing},
            )
        except EngineError as exc:
            return JSONResponse(
                status_code=500,
                content={
                    "error": str(exc),
                    "module": type(exc).__module__,
                    "kind": type(exc).__name__,
                },
            )

        payload = {"id": run_id, "results": [report_payload(r) for r in results]}
        body_bytes = (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
        app.state.run_cache[run_id] = body_bytes
        return Response(
            content=body_bytes,
            media_type="application/json",
            headers={"X-Cache": "miss", "X-Run-Id": run_id},
        )

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        cached = app.state.run_cache.get(run_id)
        if cached is None:
            return JSONResponse(status_code=404, content={"error": "unknown run id"})
        return Response(content=cached, media_type="application/json",
                        headers={"X-Cache": "hit", "X-Run-Id": run_id})

    return app


def _bad(message: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": message})
