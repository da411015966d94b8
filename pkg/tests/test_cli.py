import csv
import io
import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from ergomax.cli import cli
from ergomax.core.config import resolve_tolerances
from ergomax.core.errors import ParseError
from ergomax.core.report import RunReport
from ergomax.core.telemetry import reset_telemetry
from ergomax.dispatcher import default_dispatcher

DATA = Path(__file__).resolve().parent.parent / "data"


def data(name: str) -> str:
    return str(DATA / name)


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


def run_json(*args):
    result = invoke(*args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


# ─────────────────────────────────────────────────────────────────────────────
# AVERAGES
# ─────────────────────────────────────────────────────────────────────────────

def test_alpha_on_three_point_file():
    report = run_json("alpha", "--system", data("three_point.json"))
    assert report["command"] == "alpha"
    assert report["results"]["value"] == pytest.approx(0.5)
    assert report["results"]["witness_labels"] == ["0", "1"]
    assert report["inputs"]["system"] == data("three_point.json")
    assert report["inputs"]["system_document"]["symbols"] == ["0", "1", "a"]
    assert report["tolerances"]["compare"] == 1e-10


def test_alpha_brute_force_on_depth_two_file():
    report = run_json("alpha", "--system", data("full2.json"), "--method", "brute")
    assert report["results"]["method"] == "brute_force"
    assert report["results"]["value"] == pytest.approx(0.7)
    assert report["results"]["witness_labels"] == ["01", "10"]


def test_three_point_example_report():
    report = run_json("three-point", "--a", "0.25")
    results = report["results"]
    assert results["alpha"] == pytest.approx(0.5)
    assert results["inf_n_sup_x"] == pytest.approx(0.5)
    assert results["inf_n_sup_x_attained_at"] is None
    assert results["sup_x_inf_n"] == pytest.approx(0.5)
    assert results["sup_sup"] == pytest.approx(1.0)
    assert results["inf_inf"] == pytest.approx(0.0)
    assert [p["point"] for p in results["points"]] == ["|1,0", "|0,1", "a|1,0"]
    assert [p["inf_over_n"] for p in results["points"]] == pytest.approx([0.5, 0.0, 0.25])
    assert all(identity["holds"] for identity in results["identities"])
    assert len(results["horizon_sup"]) == 12


@pytest.mark.parametrize("a", ["-3", "0.75", "2.5"])
def test_three_point_example_other_values_of_a(a):
    report = run_json("three-point", "--a", a, "--horizon", "6")
    assert report["results"]["inf_n_sup_x"] == pytest.approx(0.5)
    assert report["results"]["sup_x_inf_n"] == pytest.approx(0.5)


def test_three_point_example_csv():
    result = invoke("three-point", "--a", "0.25", "--horizon", "4", "--csv")
    assert result.exit_code == 0
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0] == ["n", "|1,0", "|0,1", "a|1,0", "horizon_sup"]
    assert len(rows) == 5
    assert [float(v) for v in rows[2][1:]] == pytest.approx([0.5, 0.5, 0.625, 0.625])


def test_horizons_csv():
    result = invoke("horizons", "--system", "three-point", "--horizon", "4", "--csv")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[:3] == ["n,sup_value", "1,1.0", "2,0.625"]
    assert lines[-2] == "inf,0.5625"
    label, bound = lines[-1].split(",")
    assert label == "error_bound"
    assert float(bound) == pytest.approx(0.375, abs=1e-12)


def test_horizons_json():
    results = run_json("horizons", "--system", "golden", "--horizon", "10")["results"]
    assert len(results["rows"]) == 10
    assert results["alpha"] == 0.0
    assert results["running_inf"] >= results["alpha"]


def test_point():
    results = run_json("point", "--system", "three-point", "--point", "a|1,0", "--horizon", "4")["results"]
    assert results["inf_over_n"] == pytest.approx(0.25)
    assert results["inf_attained_at"] == 1
    assert results["sup_over_n"] == pytest.approx(0.625)
    assert results["series"] == pytest.approx([0.25, 0.625, 1.25 / 3, 0.5625])


def test_minimax():
    report = run_json("minimax", "--matrix", data("minimax_matrix.json"))
    assert report["results"]["holds"]
    assert report["results"]["shape"] == [3, 3]
    assert report["inputs"]["matrix_values"][0] == [3.0, -1.0, 2.0]


# ─────────────────────────────────────────────────────────────────────────────
# DUALITY, PRESSURE, CONVEX
# ─────────────────────────────────────────────────────────────────────────────

def test_subaction():
    results = run_json("subaction", "--system", "three-point")["results"]
    assert results["psi"] == pytest.approx({"0": 0.5, "1": 0.0, "a": 0.0})
    assert results["tight_cycle"] == ["0", "1"]
    assert results["tight_edges"] == [["0", "1"], ["1", "0"]]
    assert results["passed"]


def test_pressure_spectral():
    results = run_json("pressure", "--system", "golden", "--samples", "5")["results"]
    assert results["gamma"] == pytest.approx(math.log((1 + math.sqrt(5)) / 2))
    assert results["axioms"] == ["C1", "C2", "C3", "C4", "lipschitz"]
    assert results["vp1"]["passed"]


def test_pressure_max_ergodic_on_reducible_system():
    results = run_json("pressure", "--system", "three-point", "--kind", "max_ergodic")["results"]
    assert results["gamma"] == pytest.approx(0.5)
    assert results["vp1"] is None


def test_entropy_bernoulli():
    results = run_json("entropy", "--system", "full2", "--measure", "bernoulli", "--probs", "0.3,0.7")["results"]
    assert results["entropy_analytic"] == pytest.approx(0.6108643020548935)
    assert results["passed"]


def test_entropy_parry_on_golden():
    results = run_json("entropy", "--system", "golden")["results"]
    assert results["entropy_vp2"] == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-8)


def test_pressure_and_entropy_report_keys():
    pressure = run_json("pressure", "--system", "golden", "--samples", "3")["results"]
    assert {"gamma", "vp1"} <= set(pressure)
    assert {"lhs", "rhs", "gap"} <= set(pressure["vp1"])
    entropy = run_json("entropy", "--system", "golden")["results"]
    assert {"entropy_vp2", "entropy_analytic"} <= set(entropy)
    assert entropy["entropy_vp2"] == pytest.approx(entropy["entropy_analytic"], abs=1e-5)


def test_axioms():
    results = run_json("axioms", "--system", "golden", "--kind", "sup_norm", "--samples", "4", "--depth", "2")[
        "results"
    ]
    assert results["passed"]
    assert results["checked"] == ["C1", "C2", "C3", "lipschitz"]
    assert results["failures"] == []


def test_fenchel_instances():
    bilinear = run_json("fenchel", "--instance", data("matching_pennies.json"))["results"]
    assert bilinear["kind"] == "bilinear"
    assert bilinear["gap"] == pytest.approx(0.0, abs=1e-12)

    fr = run_json("fenchel", "--instance", data("fenchel_quadratic_halfline.json"))["results"]
    assert fr["kind"] == "fr_duality"
    assert fr["primal"] == pytest.approx(0.5)
    assert fr["passed"]

    bic = run_json("fenchel", "--instance", data("biconjugate_double_well.json"))["results"]
    assert bic["kind"] == "biconjugate"
    assert bic["below"] and not bic["convex"]


# ─────────────────────────────────────────────────────────────────────────────
# OUTPUT MODES AND TOLERANCES
# ─────────────────────────────────────────────────────────────────────────────

def test_table_output():
    result = invoke("subaction", "--system", "three-point", "--table")
    assert result.exit_code == 0
    assert "Results" in result.output


def test_dashboard_without_subcommand():
    result = invoke()
    assert result.exit_code == 0
    assert "Commands" in result.output
    assert "Tolerances" in result.output
    assert "three-point" in result.output


def test_dashboard_shows_recorded_runs(isolated_home, monkeypatch):
    monkeypatch.setenv("ERGOMAX_TELEMETRY", "1")
    telemetry = reset_telemetry(enabled=True)
    telemetry.track_run("alpha", 2.0, 0)
    telemetry.track_run("entropy", 4.0, 5)
    telemetry.flush()

    result = invoke()
    assert result.exit_code == 0
    assert "Recorded runs" in result.output
    assert "50%" in result.output


def test_out_saves_the_report(tmp_path):
    target = tmp_path / "reports" / "alpha.json"
    result = invoke("alpha", "--system", "golden", "--out", str(target))
    assert result.exit_code == 0
    saved = RunReport.model_validate_json(target.read_text())
    assert saved.command == "alpha"
    assert saved.results["value"] == 0.0


def test_tolerance_override_is_echoed():
    report = run_json("alpha", "--system", "golden", "--tol", "compare=1e-6", "--tol", "cycle=1e-9")
    assert report["tolerances"]["compare"] == 1e-6
    assert report["tolerances"]["cycle"] == 1e-9


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("ERGOMAX_TOL_OVERRIDES", "feasibility=1e-7")
    report = run_json("subaction", "--system", "golden")
    assert report["tolerances"]["feasibility"] == 1e-7


# ─────────────────────────────────────────────────────────────────────────────
# EXIT CODES
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "args",
    [
        ("alpha", "--system", "golden", "--tol", "nope=1"),
        ("alpha", "--system", "golden", "--tol", "compare=-1"),
        ("alpha", "--system", "golden", "--csv"),
        ("alpha", "--system", "no/such/file.json"),
        ("point", "--system", "three-point", "--point", "1,0"),
        ("point", "--system", "golden", "--point", "|1"),
        ("entropy", "--system", "full2", "--measure", "bernoulli"),
        ("minimax", "--matrix", data("three_point.json")),
    ],
)
def test_parse_errors_exit_2(args):
    assert invoke(*args).exit_code == 2


def test_fenchel_unknown_kind_exits_2(tmp_path):
    path = tmp_path / "instance.json"
    path.write_text('{"kind": "nope"}')
    assert invoke("fenchel", "--instance", str(path)).exit_code == 2


def test_empty_subshift_exits_3(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text('{"symbols": ["0", "1"], "transition": [[0, 1], [0, 0]]}')
    result = invoke("alpha", "--system", str(path))
    assert result.exit_code == 3
    assert "empty" in result.output.lower()


@pytest.mark.parametrize(
    "args",
    [
        ("three-point", "--a", "1"),
        ("three-point", "--a", "0"),
        ("pressure", "--system", "three-point"),
        ("entropy", "--system", "three-point"),
    ],
)
def test_domain_errors_exit_4(args):
    assert invoke(*args).exit_code == 4


def test_identity_failure_exits_5():
    result = invoke(
        "entropy", "--system", "full2", "--measure", "bernoulli", "--probs", "0.3,0.7", "--tol", "entropy=1e-300"
    )
    assert result.exit_code == 5
    assert "identity failed" in result.output


# ─────────────────────────────────────────────────────────────────────────────
# DISPATCHER
# ─────────────────────────────────────────────────────────────────────────────

def test_dispatcher_tracks_runs_and_errors():
    telemetry = reset_telemetry(enabled=True)
    dispatcher = default_dispatcher(telemetry)
    assert "three-point" in dispatcher.list_commands()

    outcome = dispatcher.dispatch("alpha", {"system": "golden"}, resolve_tolerances())
    assert outcome.exit_code == 0
    assert outcome.report.results["value"] == 0.0

    with pytest.raises(ParseError):
        dispatcher.dispatch("point", {"system": "golden", "point": "bad"}, resolve_tolerances())
    with pytest.raises(ParseError):
        dispatcher.dispatch("nope", {}, resolve_tolerances())

    runs = telemetry.get_events("run")
    assert [r["exit_code"] for r in runs] == [0, 2]
    assert telemetry.get_events("error")[0]["error_type"] == "ParseError"
