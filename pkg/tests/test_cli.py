import json

from click.testing import CliRunner

from gse.cli import main


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_run_to_stdout(fixture_dir):
    result = invoke(
        "run",
        "--model", str(fixture_dir / "models" / "single_room.xml"),
        "--weather", str(fixture_dir / "weather" / "washington_dc.epw"),
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["label"] == "baseline"
    assert len(payload["monthly"]) == 12


def test_run_writes_reports(fixture_dir, tmp_path):
    out = tmp_path / "reports"
    result = invoke(
        "run",
        "--model", str(fixture_dir / "models" / "two_room.xml"),
        "--weather", str(fixture_dir / "weather" / "houston_tx.epw"),
        "--alpha", "0.45",
        "--protocol", "alt-days",
        "--terrain", "suburban",
        "--setpoints", "19,25",
        "--years", "50",
        "--out", str(out),
        "--format", "json,csv",
    )
    assert result.exit_code == 0, result.output
    assert (out / "baseline.json").is_file()
    assert (out / "baseline.csv").is_file()
    assert not (out / "baseline.txt").exists()
    payload = json.loads((out / "baseline.json").read_text())
    assert payload["lifespan_years"] == 50


def test_missing_model_exits_2(fixture_dir):
    result = invoke(
        "run",
        "--model", str(fixture_dir / "models" / "missing.xml"),
        "--weather", str(fixture_dir / "weather" / "houston_tx.epw"),
    )
    assert result.exit_code == 2


def test_bad_setpoints_exit_2(fixture_dir):
    result = invoke(
        "run",
        "--model", str(fixture_dir / "models" / "single_room.xml"),
        "--weather", str(fixture_dir / "weather" / "houston_tx.epw"),
        "--setpoints", "twenty,24",
    )
    assert result.exit_code == 2


def test_unresolved_material_exits_3(fixture_dir, tmp_path):
    dataset = tmp_path / "small.csv"
    dataset.write_text(
        "name,conductivity_w_mk,density_kg_m3,specific_heat_j_kgk,"
        "ee_mj_kg,ew_l_kg,source_tag,review_status\n"
        '"Brick, Common",0.72,1920,790,3.0,1.6,"test",Unreviewed\n'
    )
    result = invoke(
        "run",
        "--model", str(fixture_dir / "models" / "single_room.xml"),
        "--weather", str(fixture_dir / "weather" / "houston_tx.epw"),
        "--materials", str(dataset),
    )
    assert result.exit_code == 3


def test_compare_with_plan_file(fixture_dir, tmp_path):
    plan_file = tmp_path / "plans.json"
    plan_file.write_text(
        json.dumps(
            [
                {
                    "label": "more-insulation",
                    "substitutions": [
                        {
                            "construction_id": "con-extwall",
                            "layers": [
                                {"material": "Brick, Common", "thickness_m": 0.09},
                                {"material": "Insulation, Fiberglass Batt",
                                 "thickness_m": 0.30},
                                {"material": "Gypsum Board", "thickness_m": 0.016},
                            ],
                        }
                    ],
                }
            ]
        )
    )
    out = tmp_path / "cmp"
    result = invoke(
        "compare",
        "--model", str(fixture_dir / "models" / "single_room.xml"),
        "--weather", str(fixture_dir / "weather" / "emmonak_ak.epw"),
        "--plan", str(plan_file),
        "--out", str(out),
        "--format", "json",
    )
    assert result.exit_code == 0, result.output
    base = json.loads((out / "baseline.json").read_text())
    alt = json.loads((out / "more-insulation.json").read_text())
    assert alt["annual"]["heating_kwh"] < base["annual"]["heating_kwh"]


def test_compare_bad_plan_file_exits_2(fixture_dir, tmp_path):
    plan_file = tmp_path / "broken.json"
    plan_file.write_text("{not json")
    result = invoke(
        "compare",
        "--model", str(fixture_dir / "models" / "single_room.xml"),
        "--weather", str(fixture_dir / "weather" / "emmonak_ak.epw"),
        "--plan", str(plan_file),
    )
    assert result.exit_code == 2


def test_fixtures_command(tmp_path):
    result = invoke("fixtures", "--out", str(tmp_path / "fx"))
    assert result.exit_code == 0
    assert (tmp_path / "fx" / "models" / "large_model.xml").is_file()
    assert (tmp_path / "fx" / "weather" / "emmonak_ak.epw").is_file()
