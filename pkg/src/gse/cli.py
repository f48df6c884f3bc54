"""Command line entry points.

Exit codes: 0 success, 2 configuration error, 3 data error (unresolved
materials), 4 computation error.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import ConfigError, EngineError, PlanError, UnresolvedMaterial
from .run import (
    RunConfig,
    compare as run_compare,
    load_plans,
    run_once,
)
from .reports import emit_reports, report_payload, to_json_bytes
from .thermal import Terrain, ThermalSettings
from .weather import TimeStepProtocol

EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_COMPUTE = 4

_PROTOCOLS = {"hourly": TimeStepProtocol.EVERY_HOUR_EVERY_DAY,
              "alt-days": TimeStepProtocol.EVERY_HOUR_EVERY_OTHER_DAY}
_TERRAINS = {"open": Terrain.FLAT_OPEN_COUNTRY,
             "suburban": Terrain.SUBURBAN,
             "urban": Terrain.URBAN}


def _build_config(model, weather_path, alpha, protocol, terrain, setpoints,
                  materials, years, out, formats) -> RunConfig:
    kwargs = {}
    if alpha is not None:
        kwargs["alpha"] = alpha
    if protocol is not None:
        kwargs["protocol"] = _PROTOCOLS[protocol]
    if terrain is not None:
        kwargs["terrain"] = _TERRAINS[terrain]
    if setpoints is not None:
        try:
            heat, cool = (float(v) for v in setpoints.split(","))
        except ValueError:
            raise ConfigError("--setpoints expects 'HEAT,COOL'") from None
        kwargs["heat_setpoint"] = heat
        kwargs["cool_setpoint"] = cool
    settings = ThermalSettings(**kwargs)
    return RunConfig(
        model_path=Path(model),
        weather_path=Path(weather_path),
        thermal=settings,
        materials_source=materials or "",
        lifespan_years=years,
        output_dir=Path(out) if out else None,
        formats=tuple(f.strip() for f in formats.split(",") if f.strip()),
    )


def _finish(results, config) -> None:
    if config.output_dir is not None:
        written = emit_reports(results, config.formats, config.output_dir)
        for path in written:
            click.echo(f"wrote {path}")
    else:
        for result in results:
            click.echo(to_json_bytes(report_payload(result)).decode("utf-8"), nl=False)


def _run_guarded(fn) -> None:
    try:
        fn()
    except (ConfigError, PlanError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except UnresolvedMaterial as exc:
        click.echo(f"data error: {exc}", err=True)
        sys.exit(EXIT_DATA)
    except EngineError as exc:
        click.echo(f"computation error: {exc}", err=True)
        sys.exit(EXIT_COMPUTE)


def _shared_options(fn):
    fn = click.option("--model", required=True, type=click.Path())(fn)
    fn = click.option("--weather", "weather_path", required=True, type=click.Path())(fn)
    fn = click.option("--alpha", type=float, default=None,
                      help="capacitance correction multiplier in (0,1]")(fn)
    fn = click.option("--protocol", type=click.Choice(sorted(_PROTOCOLS)), default=None)(fn)
    fn = click.option("--terrain", type=click.Choice(sorted(_TERRAINS)), default=None)(fn)
    fn = click.option("--setpoints", default=None, help="heating,cooling degC")(fn)
    fn = click.option("--materials", default=None,
                      help="materials service URL or dataset file; bundled by default")(fn)
    fn = click.option("--years", type=int, default=100, show_default=True,
                      help="lifespan for the lifetime energy total")(fn)
    fn = click.option("--out", default=None, type=click.Path(),
                      help="report directory; stdout json when omitted")(fn)
    fn = click.option("--format", "formats", default="text,csv,json", show_default=True)(fn)
    return fn


@click.group()
def main() -> None:
    """Dual-metric building energy analysis."""


@main.command()
@_shared_options
def run(model, weather_path, alpha, protocol, terrain, setpoints, materials,
        years, out, formats) -> None:
    """Run thermal and embodied metrics once."""

    def body():
        config = _build_config(model, weather_path, alpha, protocol, terrain,
                               setpoints, materials, years, out, formats)
        _finish([run_once(config)], config)

    _run_guarded(body)


@main.command()
@_shared_options
@click.option("--plan", "plan_file", required=True, type=click.Path(),
              help="json list of substitution plans")
def compare(model, weather_path, alpha, protocol, terrain, setpoints, materials,
            years, out, formats, plan_file) -> None:
    """Run the baseline plus every substitution plan."""

    def body():
        config = _build_config(model, weather_path, alpha, protocol, terrain,
                               setpoints, materials, years, out, formats)
        plans = load_plans(plan_file)
        _finish(run_compare(config, plans), config)

    _run_guarded(body)


@main.command()
@click.option("--bind", default="127.0.0.1:8000", show_default=True)
@click.option("--fixtures", "fixtures_dir", required=True, type=click.Path())
@click.option("--materials", default="", help="materials service URL or dataset file")
@click.option("--out", default=None, type=click.Path(), help="log directory")
def serve(bind, fixtures_dir, materials, out) -> None:
    """Serve the comparison HTTP API for the browser UI."""
    import uvicorn

    from .api import create_app

    host, _, port = bind.partition(":")
    app = create_app(fixtures_dir, materials_spec=materials,
                     output_dir=Path(out) if out else None)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


@main.command("materials-serve")
@click.option("--bind", default="127.0.0.1:8377", show_default=True)
@click.option("--db", "db_path", default=":memory:", show_default=True,
              help="sqlite file backing the store")
@click.option("--dataset", default=None, type=click.Path(),
              help="seed dataset csv; bundled dataset by default")
def materials_serve(bind, db_path, dataset) -> None:
    """Serve the material property store over HTTP."""
    import uvicorn

    from .materials.records import load_dataset
    from .materials.service import create_app
    from .materials.store import MaterialStore

    store = MaterialStore(db_path)
    if store.count() == 0:
        store.seed(load_dataset(dataset))
    app = create_app(store, seed_dataset=False)
    host, _, port = bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8377))


@main.command()
@click.option("--out", "outdir", required=True, type=click.Path())
def fixtures(outdir) -> None:
    """Write the bundled synthetic models and weather files."""
    from .fixtures import write_fixtures

    for name, path in write_fixtures(outdir).items():
        click.echo(f"{name}: {path}")


if __name__ == "__main__":
    main()
