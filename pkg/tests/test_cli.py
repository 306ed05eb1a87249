"""CLI contract: flags, exit codes, determinism, report round-trips."""

import json

import numpy as np
import pytest

from solvgeo import cli

EINSTEIN_DOC = {"n": 2, "p": 1.0, "x": [0.0], "sigma": [], "beta": 1.0}
DIAG_DOC = {"n": 2, "S": [[2.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 0.5]]}


def run_cli(tmp_path, doc, *args, name="in.json"):
    paths = []
    if doc is not None:
        src = tmp_path / name
        src.write_text(json.dumps(doc))
        paths = ["--input", str(src)]
    out = tmp_path / "out.json"
    code = cli.main([*args, *paths, "--output", str(out)])
    text = out.read_text()
    return code, text, json.loads(text)


def test_canonicalize_and_exit_zero(tmp_path):
    code, _, report = run_cli(tmp_path, DIAG_DOC, "--command", "canonicalize")
    assert code == 0
    assert report["canonical"] == {"n": 2, "p": 2, "x": [0], "sigma": [], "beta": 0.5}
    assert report["residual"] <= 1e-9


def test_report_round_trip_is_byte_identical(tmp_path):
    code, text, report = run_cli(tmp_path, DIAG_DOC, "--command", "canonicalize")
    assert code == 0
    code2, text2, _ = run_cli(tmp_path, report, "--command", "canonicalize", name="report.json")
    assert code2 == 0
    assert text2 == text


def test_random_metric_seed_determinism(tmp_path):
    code, text, report = run_cli(tmp_path, None, "--command", "random-metric",
                                 "--n", "3", "--seed", "9")
    code2, text2, _ = run_cli(tmp_path, None, "--command", "random-metric",
                              "--n", "3", "--seed", "9")
    assert code == code2 == 0
    assert text == text2
    assert report["seed"] == 9


def test_random_metric_feeds_canonicalize(tmp_path):
    _, _, generated = run_cli(tmp_path, None, "--command", "random-metric",
                              "--n", "2", "--seed", "4")
    code, _, report = run_cli(tmp_path, generated, "--command", "canonicalize")
    assert code == 0
    recovered = report["canonical"]
    for key in ("p", "beta"):
        assert abs(recovered[key] - generated["canonical"][key]) < 1e-8


def test_einstein_command(tmp_path):
    code, _, report = run_cli(tmp_path, EINSTEIN_DOC, "--command", "einstein")
    assert code == 0
    assert report["einstein"]["einstein"] is True
    assert report["einstein"]["constant"] == -1.5
    assert report["scalar"] == -6


def test_isometric_command(tmp_path):
    doc = {"first": DIAG_DOC, "second": DIAG_DOC}
    code, _, report = run_cli(tmp_path, doc, "--command", "isometric")
    assert code == 0 and report["isometric"]["isometric"] is True


def test_batch_mode_and_first_failure_exit_code(tmp_path):
    batch = [
        {"command": "einstein", "input": EINSTEIN_DOC},
        {"command": "canonicalize",
         "input": {"n": 2, "S": np.diag([1.0, 1.0, 1.0, -1.0]).tolist()}},
    ]
    code, _, reports = run_cli(tmp_path, batch, "--jobs", "2")
    assert isinstance(reports, list) and len(reports) == 2
    assert [r["status"] for r in reports] == ["ok", "error"]
    assert code == cli.EXIT_VALIDATION


def test_parse_error_exit_code(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text("{not json")
    out = tmp_path / "out.json"
    code = cli.main(["--command", "canonicalize", "--input", str(src), "--output", str(out)])
    assert code == cli.EXIT_PARSE
    assert json.loads(out.read_text())["error"]["category"] == "parse"


def test_unknown_payload_keys_are_a_parse_error(tmp_path):
    code, _, report = run_cli(tmp_path, {"n": 2, "sgima": [2.0], "p": 1.0, "beta": 1.0},
                              "--command", "canonicalize")
    assert code == cli.EXIT_PARSE
    assert "sgima" in report["error"]["message"]


def test_conditioning_error_exit_code(tmp_path):
    S = np.diag([1.0, 1e14, 1.0, 1.0]).tolist()
    code, _, report = run_cli(tmp_path, {"n": 2, "S": S}, "--command", "canonicalize")
    assert code == cli.EXIT_CONDITIONING
    assert report["error"]["category"] == "conditioning"


def test_missing_input_is_parse_error(tmp_path):
    out = tmp_path / "out.json"
    code = cli.main(["--command", "canonicalize", "--output", str(out)])
    assert code == cli.EXIT_PARSE


def test_env_tolerance_override(tmp_path, monkeypatch):
    monkeypatch.setenv("SOLVGEO_TOL", "1e-6")
    code, _, report = run_cli(tmp_path, EINSTEIN_DOC, "--command", "einstein")
    assert code == 0 and report["tol"] == 1e-6
    monkeypatch.setenv("SOLVGEO_TOL", "totally-not-a-float")
    code, _, report = run_cli(tmp_path, EINSTEIN_DOC, "--command", "einstein")
    assert code == cli.EXIT_PARSE


def test_flag_tolerance_beats_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SOLVGEO_TOL", "1e-6")
    code, _, report = run_cli(tmp_path, EINSTEIN_DOC, "--command", "einstein", "--tol", "1e-10")
    assert code == 0 and report["tol"] == 1e-10


def test_seventeen_digit_float_formatting():
    assert cli.dumps_report(1.0 / 3.0) == "0.33333333333333331"
    assert cli.dumps_report(2.0) == "2"
    with pytest.raises(ValueError):
        cli.dumps_report(float("nan"))


def test_extend_nilsoliton_via_flags_and_doc(tmp_path):
    code, _, report = run_cli(tmp_path, {"beta": 2.0}, "--command", "extend-nilsoliton",
                              "--n", "3")
    assert code == 0
    assert report["canonical"]["p"] == 0.5
