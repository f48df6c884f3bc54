import json

import pytest

import gse.run as run_mod
from gse.errors import ConfigError, PlanError
from gse.model import MaterialLayer
from gse.reports import emit_reports, monthly_csv, report_payload, to_json_bytes
from gse.run import (
    RunConfig,
    SubstitutionPlan,
    apply_plan,
    compare,
    load_plans,
    run_once,
)


@pytest.fixture()
def config(fixture_dir, tmp_path):
    return RunConfig(
        model_path=fixture_dir / "models" / "single_room.xml",
        weather_path=fixture_dir / "weather" / "emmonak_ak.epw",
        output_dir=tmp_path / "out",
    )


def half_u_plan():
    # double every exterior-wall layer thickness: halves the wall U-value
    return SubstitutionPlan(
        label="thick-walls",
        substitutions=(
            (
                "con-extwall",
                (
                    MaterialLayer("Brick, Common", 0.18),
                    MaterialLayer("Insulation, Fiberglass Batt", 0.28),
                    MaterialLayer("Gypsum Board", 0.032),
                ),
            ),
        ),
    )


def test_run_once_produces_both_metrics(config):
    result = run_once(config)
    assert result.label == "baseline"
    assert len(result.loads.heating_kwh) == 12
    assert result.ee.total_mj > 0
    assert result.ee.per_material_mj and result.ee.per_surface_mj
    assert result.ee.per_assembly_mj
    assert result.lifetime_total_btu == pytest.approx(
        result.ee.total_btu + 100 * result.annual_operating_btu, rel=1e-12
    )
    assert "thermal_s" in result.timings and "embodied_s" in result.timings


def test_missing_weather_path_fails_before_compute(config):
    config.weather_path = config.weather_path.with_name("nope.epw")
    with pytest.raises(ConfigError):
        run_once(config)


def test_bad_format_rejected(config):
    config.formats = ("pdf",)
    with pytest.raises(ConfigError):
        run_once(config)


def test_compare_baseline_vs_half_u(config):
    results = compare(config, [half_u_plan()])
    assert [r.label for r in results] == ["baseline", "thick-walls"]
    base, alt = results
    # oracle: two independent single runs must reproduce the pair
    solo_base = run_once(config)
    solo_alt = run_once(config, half_u_plan())
    assert base.loads.heating_kwh == solo_base.loads.heating_kwh
    assert alt.loads.heating_kwh == solo_alt.loads.heating_kwh
    assert alt.loads.annual_heating_kwh < base.loads.annual_heating_kwh
    assert alt.ee.total_mj > base.ee.total_mj  # more material in the walls


def test_compare_empty_plans_rejected(config):
    with pytest.raises(ConfigError):
        compare(config, [])


def test_compare_isolates_bad_plan(config):
    bad = SubstitutionPlan(
        label="broken",
        substitutions=(("con-ghost", (MaterialLayer("Brick, Common", 0.1),)),),
    )
    results = compare(config, [half_u_plan(), bad])
    assert [r.label for r in results] == ["baseline", "thick-walls"]
    assert any("broken" in w for w in results[0].warnings)


def test_compare_parses_model_once(config, monkeypatch):
    calls = {"parse": 0, "simulate": 0}
    original_parse = run_mod.parse_gbxml_file
    original_sim = run_mod.simulate

    def counting_parse(path):
        calls["parse"] += 1
        return original_parse(path)

    def counting_sim(*args, **kwargs):
        calls["simulate"] += 1
        return original_sim(*args, **kwargs)

    monkeypatch.setattr(run_mod, "parse_gbxml_file", counting_parse)
    monkeypatch.setattr(run_mod, "simulate", counting_sim)
    results = compare(config, [half_u_plan()])
    assert len(results) == 2
    assert calls["parse"] == 1  # exactly one parse for N+1 runs
    assert calls["simulate"] == 2  # N plans + baseline


def test_apply_plan_unknown_construction(single_room_classified):
    bad = SubstitutionPlan(
        label="x", substitutions=(("missing-id", (MaterialLayer("m", 0.1),)),)
    )
    with pytest.raises(PlanError):
        apply_plan(single_room_classified, bad)


def test_plan_file_loading(tmp_path):
    path = tmp_path / "plans.json"
    path.write_text(
        json.dumps(
            [
                {
                    "label": "alt-1",
                    "substitutions": [
                        {
                            "construction_id": "con-extwall",
                            "layers": [
                                {"material": "Brick, Common", "thickness_m": 0.2}
                            ],
                        }
                    ],
                }
            ]
        )
    )
    plans = load_plans(path)
    assert len(plans) == 1
    assert plans[0].label == "alt-1"
    assert plans[0].substitutions[0][0] == "con-extwall"


def test_plan_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    with pytest.raises(ConfigError):
        load_plans(path)
    path.write_text(json.dumps([{"substitutions": []}]))
    with pytest.raises(PlanError):
        load_plans(path)


# --- reports -------------------------------------------------------------


def test_reports_three_files(config, tmp_path):
    result = run_once(config)
    written = emit_reports([result], ("text", "csv", "json"), tmp_path / "r")
    assert len(written) == 3
    names = {p.name for p in written}
    assert names == {"baseline.json", "baseline.csv", "baseline.txt"}


def test_csv_has_header_and_12_rows(config):
    result = run_once(config)
    lines = monthly_csv(result).strip().splitlines()
    assert lines[0] == "month,heating_kwh,cooling_kwh"
    assert len(lines) == 13


def test_json_reports_byte_identical(config):
    a = to_json_bytes(report_payload(run_once(config)))
    b = to_json_bytes(report_payload(run_once(config)))
    assert a == b


def test_json_roundtrip_lossless(config):
    result = run_once(config)
    payload = report_payload(result)
    again = json.loads(to_json_bytes(payload).decode("utf-8"))
    assert again["annual"]["heating_kwh"] == result.loads.annual_heating_kwh
    assert again["ee"]["total_btu"] == result.ee.total_btu
    assert again["lifetime_total_btu"] == result.lifetime_total_btu
    monthly = {row["month"]: row["heating_kwh"] for row in again["monthly"]}
    for m in range(12):
        assert monthly[m + 1] == result.loads.heating_kwh[m]


def test_timings_not_in_payload(config):
    payload = report_payload(run_once(config))
    assert "timings" not in payload


def test_log_files_written(config):
    run_once(config)
    logs = sorted(p.name for p in (config.output_dir / "logs").iterdir())
    assert logs == ["baseline.embodied.log", "baseline.run.log", "baseline.thermal.log"]
    thermal_log = (config.output_dir / "logs" / "baseline.thermal.log").read_text()
    assert "month=01 space=sp-1" in thermal_log
    assert len(thermal_log.strip().splitlines()) == 12  # one line per month per space
