#!/usr/bin/env python3
# tests/test_cli.py

import csv
import io
import json
import math

import pytest

from constants import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE_ERROR
from main import run_command

KIN = ["--omega", "1", "--radius", "0.5"]


def run(argv):
    out = io.StringIO()
    code = run_command(argv, out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_scalar_worked_value():
    code, payload = run_json(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1"])
    assert code == EXIT_OK
    assert payload["command"] == "cf-scalar"
    assert payload["units"] == "natural"
    assert payload["inputs"]["tau2"] == 1.0
    assert payload["value"] == pytest.approx(-0.3074, rel=2e-4)
    assert payload["method"] == "closed_form"


def test_csv_output_carries_the_same_value():
    _, payload = run_json(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1"])
    code, text = run(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1", "--format", "csv"])
    assert code == EXIT_OK
    rows = dict(csv.reader(io.StringIO(text)))
    assert float(rows["value"]) == payload["value"]


def test_em_component_and_discrete_flag():
    code, payload = run_json(["cf-em", "--omega", "1", "--radius", "0", "--tau1", "0", "--tau2", "1"])
    assert code == EXIT_OK
    assert payload["value"] == pytest.approx(4.0 * math.cos(1.0) / math.pi, rel=1e-10)

    code, payload = run_json(["cf-em", *KIN, "--tau1", "0", "--tau2", "0.25", "--discrete"])
    assert code == EXIT_OK
    assert payload["vacuum_part"] is not None
    assert math.isfinite(payload["value"])


def test_static_detector_has_no_rotation_energy():
    code, payload = run_json(["energy-density", "--omega", "0", "--radius", "1"])
    assert code == EXIT_OK
    assert payload["value"] == 0.0
    assert payload["t_rot"] == 0.0


def test_energy_density_routes_agree():
    _, payload = run_json(["energy-density", "--omega", "2", "--radius", "0.25"])
    assert payload["spectral_route"] == pytest.approx(payload["value"], rel=1e-8)
    assert payload["mode_sum_route"] == pytest.approx(payload["value"], rel=1e-8)


def test_si_run_reports_natural_value():
    _, natural = run_json(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1"])
    c = 299792458.0
    code, si = run_json(["cf-scalar", "--units", "si", "--omega", "1", "--radius", repr(0.5 * c),
                         "--tau1", "0", "--tau2", "1"])
    assert code == EXIT_OK
    assert si["units"] == "si"
    assert si["value_natural"] == pytest.approx(natural["value"], rel=1e-9)


def test_spectrum_rows():
    code, payload = run_json(["spectrum", *KIN, "--n-max", "5"])
    assert code == EXIT_OK
    assert [row["n"] for row in payload["rows"]] == [1, 2, 3, 4, 5]
    assert payload["rows"][0]["occupation"] == pytest.approx(1.0 / math.expm1(2.0 * math.pi), rel=1e-12)


def test_bogolubov_particle_number():
    code, payload = run_json(["bogolubov", *KIN, "--k1", "1", "--k2", "0", "--k3", "0",
                              "--delta-t", repr(math.pi / 2.0)])
    assert code == EXIT_OK
    gamma = 1.0 / math.sqrt(0.75)
    assert payload["particle_number"] == pytest.approx(gamma / 32.0, rel=1e-9)
    assert payload["warnings"] == []


def test_frames_put_detector_at_origin():
    code, payload = run_json(["frames", *KIN, "--t", "2.0", "--event", "0.1", "0.2", "0.3", "1.5"])
    assert code == EXIT_OK
    mu = payload["detector_mu"]
    assert max(abs(mu["x1"]), abs(mu["x2"]), abs(mu["x3"])) < 1e-12
    assert mu["t"] == pytest.approx(2.0 * math.sqrt(0.75), rel=1e-12)
    for axis in ("x1", "x2", "x3", "t"):
        assert payload["event_mu"][axis] == pytest.approx(payload["event_mu_stepwise"][axis], abs=1e-12)


def test_small_monte_carlo_run():
    code, payload = run_json(["mc", *KIN, "--tau1", "0", "--tau2", "0.3", "--n-max", "2", "--ensembles", "200",
                              "--n-theta", "2", "--n-phi", "4", "--seed", "5"])
    assert code == EXIT_OK
    assert payload["method"] == "monte_carlo"
    assert payload["error_estimate"] > 0.0
    assert payload["inputs"]["seed"] == 5


@pytest.mark.parametrize("argv", [
    ["cf-em", "--omega", "1", "--radius", "2", "--tau1", "0", "--tau2", "1"],
    ["cf-scalar", *KIN, "--tau1", "0.5", "--tau2", "0.5"],
    ["cf-em", *KIN, "--tau1", "0", "--tau2", "1", "--component", "H2H3"],
    ["bogolubov", *KIN, "--k1", "0", "--k2", "0", "--k3", "0", "--delta-t", "1"],
])
def test_domain_errors_exit_with_payload(argv):
    code, payload = run_json(argv)
    assert code == EXIT_DOMAIN_ERROR
    assert set(payload) == {"error", "message", "diagnostics"}


def test_bad_flag_is_a_usage_error():
    code, payload = run_json(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1", "--frobnicate"])
    assert code == EXIT_USAGE_ERROR
    assert payload["error"] == "UsageError"


def test_missing_config_file(tmp_path):
    code, payload = run_json(["cf-scalar", *KIN, "--tau1", "0", "--tau2", "1",
                              "--config", str(tmp_path / "absent.json")])
    assert code == EXIT_USAGE_ERROR
    assert payload["error"] == "ConfigError"


def test_help_exits_cleanly(capsys):
    assert run_command(["--help"], io.StringIO()) == EXIT_OK
    assert "cf-em" in capsys.readouterr().out


def test_verify_single_suites():
    code, payload = run_json(["verify", "--suite", "bogolubov"])
    assert code == EXIT_OK
    assert payload["passed"] is True
    assert payload["n_failures"] == 0
    assert payload["n_checks"] == len(payload["checks"])

    code, payload = run_json(["verify", "--suite", "spectral", "--tolerance-profile", "quick"])
    assert code == EXIT_OK
    assert payload["profile"] == "quick"
