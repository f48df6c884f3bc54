"""Report emission: canonical json, monthly csv, and a human text table.

The json document is the machine interface consumed by the HTTP API and the
UI; identical inputs must serialize to identical bytes, so payloads are
dumped with sorted keys and no timestamps or timings. Values are kept at
full precision everywhere except the human-readable text table.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import EngineError
from .run import RunResult, _slug
from .thermal import MONTH_LABELS


class IoError(EngineError):
    """Report files could not be written."""


def report_payload(result: RunResult) -> dict:
    """Canonical json-able document for one run."""
    monthly = [
        {
            "month": m + 1,
            "heating_kwh": result.loads.heating_kwh[m],
            "cooling_kwh": result.loads.cooling_kwh[m],
        }
        for m in range(12)
    ]
    return {
        "label": result.label,
        "monthly": monthly,
        "annual": {
            "heating_kwh": result.loads.annual_heating_kwh,
            "cooling_kwh": result.loads.annual_cooling_kwh,
            "total_kwh": result.loads.annual_total_kwh,
            "operating_btu": result.annual_operating_btu,
        },
        "ee": {
            "per_material": dict(sorted(result.ee.per_material_mj.items())),
            "per_surface": dict(sorted(result.ee.per_surface_mj.items())),
            "per_assembly": dict(sorted(result.ee.per_assembly_mj.items())),
            "total_mj": result.ee.total_mj,
            "total_btu": result.ee.total_btu,
            "ew_liters": result.ee.embodied_water_l,
        },
        "lifespan_years": result.lifespan_years,
        "lifetime_total_btu": result.lifetime_total_btu,
        "warnings": list(result.warnings),
    }


def to_json_bytes(payload) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")


def monthly_csv(result: RunResult) -> str:
    lines = ["month,heating_kwh,cooling_kwh"]
    for m in range(12):
        lines.append(
            f"{m + 1},{result.loads.heating_kwh[m]!r},{result.loads.cooling_kwh[m]!r}"
        )
    return "\n".join(lines) + "\n"


def text_report(result: RunResult) -> str:
    head = result.loads
    rows = [
        f"run: {result.label}",
        "",
        "month  heating_kwh  cooling_kwh",
    ]
    for m in range(12):
        rows.append(
            f"{MONTH_LABELS[m]:>5}  {head.heating_kwh[m]:11.2f}  {head.cooling_kwh[m]:11.2f}"
        )
    rows += [
        f"annual {head.annual_heating_kwh:10.2f}  {head.annual_cooling_kwh:11.2f}",
        "",
        f"embodied energy: {result.ee.total_mj:.2f} MJ "
        f"({result.ee.total_btu:.4e} Btu)",
        f"embodied water : {result.ee.embodied_water_l:.2f} L",
        f"operating      : {result.annual_operating_btu:.4e} Btu/yr",
        f"lifetime ({result.lifespan_years} yr): {result.lifetime_total_btu:.4e} Btu",
    ]
    if result.warnings:
        rows.append("")
        rows.extend(f"warning: {w}" for w in result.warnings)
    return "\n".join(rows) + "\n"


def emit_reports(results: list[RunResult], formats, output_dir) -> list[Path]:
    """Write <label>.<format> for every result; deterministic naming."""
    if not results:
        raise ValueError("emit_reports needs at least one result")
    outdir = Path(output_dir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {outdir}: {exc}") from exc
    written: list[Path] = []
    for result in results:
        stem = _slug(result.label)
        try:
            if "json" in formats:
                path = outdir / f"{stem}.json"
                path.write_bytes(to_json_bytes(report_payload(result)))
                written.append(path)
            if "csv" in formats:
                path = outdir / f"{stem}.csv"
                path.write_text(monthly_csv(result), encoding="utf-8")
                written.append(path)
            if "text" in formats:
                path = outdir / f"{stem}.txt"
                path.write_text(text_report(result), encoding="utf-8")
                written.append(path)
        except OSError as exc:
            raise IoError(f"cannot write report for {result.label!r}: {exc}") from exc
    return written
