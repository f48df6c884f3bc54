"""Run orchestration: one dual-metric run, and comparative runs over plans.

A run parses the model, classifies it, resolves material properties once,
then computes thermal loads and the embodied breakdown on the same model
("both metrics from one parse"). A comparative batch applies each
substitution plan to the parsed model and re-runs both metrics; a failing
plan is isolated and reported without sinking the other alternatives.
"""
from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .embodied import BTU_PER_KWH, EEBreakdown, aggregate, lifetime_total
from .errors import ConfigError, EngineError, PlanError
from .gbxml import parse_gbxml_file
from .materials import LocalMaterialsSource, MaterialsClient, resolve
from .model import BuildingModel, Construction, MaterialLayer, classify_model
from .thermal import MonthlyLoads, ThermalSettings, simulate
from .weather import WeatherYear, parse_epw_file

log = logging.getLogger(__name__)

DEFAULT_LIFESPAN_YEARS = 100


@dataclass
class RunConfig:
    model_path: Path
    weather_path: Path
    thermal: ThermalSettings = field(default_factory=ThermalSettings)
    materials_source: str = ""  # http(s) URL, dataset file path, or "" = bundled
    lifespan_years: int = DEFAULT_LIFESPAN_YEARS
    output_dir: Path | None = None
    formats: tuple[str, ...] = ("json",)

    def validate(self) -> None:
        if self.lifespan_years < 0:
            raise ConfigError("lifespan_years must be >= 0")
        for attr in ("model_path", "weather_path"):
            path = Path(getattr(self, attr))
            if not path.is_file():
                raise ConfigError(f"{attr} does not exist: {path}")
        unknown = set(self.formats) - {"text", "csv", "json"}
        if unknown:
            raise ConfigError(f"unknown report formats: {sorted(unknown)}")
        self.thermal.validate()


@dataclass(frozen=True)
class SubstitutionPlan:
    """One comparative alternative: construction ids mapped to new layers."""

    label: str
    substitutions: tuple[tuple[str, tuple[MaterialLayer, ...]], ...]

    @classmethod
    def from_json(cls, payload: dict) -> "SubstitutionPlan":
        label = payload.get("label")
        if not label:
            raise PlanError("plan has no label")
        subs = []
        for entry in payload.get("substitutions", []):
            cid = entry.get("construction_id")
            if not cid:
                raise PlanError(f"plan {label!r}: substitution without construction_id")
            layers = tuple(
                MaterialLayer(material_ref=l["material"], thickness=float(l["thickness_m"]))
                for l in entry.get("layers", [])
            )
            if not layers:
                raise PlanError(f"plan {label!r}: construction {cid!r} has no layers")
            subs.append((cid, layers))
        return cls(label=label, substitutions=tuple(subs))


@dataclass
class RunResult:
    label: str
    loads: MonthlyLoads
    per_space: dict[str, MonthlyLoads]
    ee: EEBreakdown
    lifespan_years: int
    timings: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def annual_operating_btu(self) -> float:
        return self.loads.annual_total_kwh * BTU_PER_KWH

    @property
    def lifetime_total_btu(self) -> float:
        return lifetime_total(
            self.ee.total_btu, self.annual_operating_btu, self.lifespan_years
        )


def load_materials_source(spec: str):
    """Materials source from a URL (service) or dataset path ('' = bundled)."""
    if spec.startswith("http://") or spec.startswith("https://"):
        return MaterialsClient(spec)
    if spec:
        path = Path(spec)
        if not path.is_file():
            raise ConfigError(f"materials dataset not found: {path}")
        return LocalMaterialsSource(path)
    return LocalMaterialsSource()


def apply_plan(model: BuildingModel, plan: SubstitutionPlan) -> BuildingModel:
    """Swap construction definitions in place of the originals."""
    constructions = dict(model.constructions)
    for cid, layers in plan.substitutions:
        if cid not in constructions:
            raise PlanError(
                f"plan {plan.label!r} targets unknown construction {cid!r}"
            )
        original = constructions[cid]
        constructions[cid] = Construction(
            id=cid, name=f"{original.name} [{plan.label}]", layers=layers
        )
    return model.with_constructions(constructions)


class _RunLogs:
    """One line-oriented, timestamped log file per module per run."""

    def __init__(self, output_dir: Path | None, label: str):
        self.dir = None
        if output_dir is not None:
            self.dir = Path(output_dir) / "logs"
            self.dir.mkdir(parents=True, exist_ok=True)
        self.label = label

    def write(self, module: str, lines: list[str]) -> None:
        if self.dir is None:
            return
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        path = self.dir / f"{_slug(self.label)}.{module}.log"
        with open(path, "a", encoding="utf-8") as fh:
            for line in lines:
                fh.write(f"{stamp} {line}\n")


def _slug(label: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in label) or "run"


def run_model(
    label: str,
    model: BuildingModel,
    year: WeatherYear,
    config: RunConfig,
    materials_source,
) -> RunResult:
    """Both metrics on an already-parsed model; shared by run/compare paths."""
    logs = _RunLogs(config.output_dir, label)
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    materials = resolve(model.material_refs(), materials_source)
    timings["resolve_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sim = simulate(model, year, config.thermal, materials)
    timings["thermal_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ee = aggregate(model, materials)
    timings["embodied_s"] = time.perf_counter() - t0

    thermal_lines = []
    for space_id, loads in sim.per_space.items():
        for m in range(12):
            thermal_lines.append(
                f"month={m + 1:02d} space={space_id} "
                f"heating_kwh={loads.heating_kwh[m]:.6f} "
                f"cooling_kwh={loads.cooling_kwh[m]:.6f}"
            )
    logs.write("thermal", thermal_lines)
    logs.write(
        "embodied",
        [
            f"assembly={cid} ee_mj={mj:.6f}"
            for cid, mj in ee.per_assembly_mj.items()
        ]
        + [f"total_mj={ee.total_mj:.6f} ew_liters={ee.embodied_water_l:.6f}"],
    )
    logs.write(
        "run",
        [f"{k}={v:.4f}" for k, v in timings.items()]
        + [f"warning={w}" for w in sim.warnings],
    )

    return RunResult(
        label=label,
        loads=sim.building,
        per_space=sim.per_space,
        ee=ee,
        lifespan_years=config.lifespan_years,
        timings=timings,
        warnings=list(sim.warnings),
    )


def run_once(config: RunConfig, plan: SubstitutionPlan | None = None) -> RunResult:
    """Parse, classify, resolve, and compute both metrics for one alternative."""
    config.validate()
    model = classify_model(parse_gbxml_file(config.model_path))
    year = parse_epw_file(config.weather_path)
    source = load_materials_source(config.materials_source)
    label = plan.label if plan is not None else "baseline"
    if plan is not None:
        model = apply_plan(model, plan)
    return run_model(label, model, year, config, source)


def compare(config: RunConfig, plans: list[SubstitutionPlan]) -> list[RunResult]:
    """Baseline plus one result per plan, parsing the model exactly once.

    Plans run concurrently over the shared immutable model and weather. A
    plan that fails (unknown construction, unresolvable material) is dropped
    from the results; the failure is logged and noted on the baseline's
    warning list so reports surface it.
    """
    if not plans:
        raise ConfigError("compare needs at least one substitution plan")
    config.validate()
    base_model = classify_model(parse_gbxml_file(config.model_path))
    year = parse_epw_file(config.weather_path)
    source = load_materials_source(config.materials_source)

    def one(label: str, plan: SubstitutionPlan | None):
        model = apply_plan(base_model, plan) if plan is not None else base_model
        return run_model(label, model, year, config, source)

    baseline = one("baseline", None)
    results: list[RunResult] = [baseline]
    failures: list[str] = []

    with ThreadPoolExecutor(max_workers=min(4, len(plans))) as pool:
        futures = [(plan.label, pool.submit(one, plan.label, plan)) for plan in plans]
        for label, future in futures:
            try:
                results.append(future.result())
            except EngineError as exc:
                message = f"plan {label!r} failed: {exc}"
                log.warning(message)
                failures.append(message)

    baseline.warnings.extend(failures)
    return results


def load_plans(path) -> list[SubstitutionPlan]:
    """Plan file: json list of {label, substitutions:[...]} objects."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read plan file {path}: {exc}") from exc
    if not isinstance(payload, list):
        raise ConfigError("plan file must hold a json list of plans")
    return [SubstitutionPlan.from_json(entry) for entry in payload]
