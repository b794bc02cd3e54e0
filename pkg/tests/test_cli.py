import csv
import io
import json

import pytest

from attschemes import __version__
from attschemes.actions import build as build_action
from attschemes.main import EXIT_FAILED, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main
from attschemes.utils.output_formatter import format_output, format_rows

SMALL = ["-q", "3", "-n", "2", "-l", "1", "-m", "1"]


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["verify", "--scope", "everything"],
        ["build", "-q", "two"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_build_rejects_unsupported_field(tmp_path, capsys):
    assert main(["build", "-q", "6", "-n", "3", "-l", "2", "-m", "2", "-o", str(tmp_path / "x.scheme")]) == EXIT_USAGE
    assert "field not in table" in capsys.readouterr().err


def test_build_needs_output():
    assert main(["build", *SMALL]) == EXIT_USAGE


def test_unexpected_error_is_internal(tmp_path, monkeypatch, capsys):
    def broken(**kwargs):
        raise RuntimeError("adjacency cache lost")

    monkeypatch.setattr(build_action, "build_to_file", broken)
    assert main(["build", "-q", "2", "-n", "1", "-l", "1", "-m", "1", "-o", str(tmp_path / "s.bin")]) == EXIT_INVARIANT
    assert "Internal error: adjacency cache lost" in capsys.readouterr().err


def test_build_trivial_scheme(tmp_path):
    path = tmp_path / "trivial.scheme"
    assert main(["build", "-q", "2", "-n", "0", "-l", "0", "-m", "0", "-o", str(path)]) == EXIT_OK
    assert path.exists()


def test_build_then_verify(tmp_path):
    scheme = tmp_path / "a3211.scheme"
    report = tmp_path / "report.json"
    assert main(["build", *SMALL, "-o", str(scheme), "--threads", "2"]) == EXIT_OK
    assert main(["verify", "--scope", "spectra", "-i", str(scheme), "-o", str(report), "--no-timings"]) == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["status"] == "pass"
    assert data["scope"] == "spectra"
    assert data["params"] == {"q": 3, "n": 2, "ell": 1, "m": 1}
    assert all("seconds" not in check for check in data["checks"])


def test_verify_all(tmp_path):
    report = tmp_path / "report.json"
    assert main(["verify", *SMALL, "-o", str(report)]) == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["scope"] == "all"
    assert {check["status"] for check in data["checks"]} <= {"pass", "skip"}


def test_reports_are_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        assert main(["verify", "--scope", "structure", *SMALL, "--no-timings", "-o", str(path)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_poisoned_run_fails(tmp_path, capsys):
    report = tmp_path / "report.json"
    assert main(["verify", "--scope", "structure", *SMALL, "--poison", "p", "-o", str(report)]) == EXIT_FAILED
    data = json.loads(report.read_text(encoding="utf-8"))
    failed = [check["name"] for check in data["checks"] if check["status"] == "fail"]
    assert "structure.p_formula" in failed
    assert "structure.p_formula" in capsys.readouterr().err


def test_verify_without_parameters():
    assert main(["verify", "--scope", "spectra"]) == EXIT_USAGE


def test_verify_with_config_file(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"q": 3, "n": 2, "ell": 1, "m": 1, "scope": "bispectral"}), encoding="utf-8")
    report = tmp_path / "report.json"
    assert main(["verify", "--config", str(config), "-o", str(report)]) == EXIT_OK
    assert json.loads(report.read_text(encoding="utf-8"))["scope"] == "bispectral"


def test_unknown_config_field(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"q": 3, "colour": "red"}), encoding="utf-8")
    assert main(["verify", "--config", str(config)]) == EXIT_USAGE


def test_johnson_scope_on_its_own(tmp_path):
    report = tmp_path / "report.json"
    assert main(["verify", "--scope", "johnson", "-r", "3", "-n", "3", "-m", "2", "-o", str(report)]) == EXIT_OK
    assert json.loads(report.read_text(encoding="utf-8"))["params"] == {"johnson": {"r": 3, "n": 3, "m": 2}}


def test_eigen_table_csv(capsys):
    assert main(["tables", "--kind", "eigen", "-q", "2", "-n", "3", "-l", "2", "-m", "2"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 25
    assert rows[0] == {"i": "0", "j": "0", "r": "0", "s": "0", "T": "1", "U": "1"}
    assert {"i": "0", "j": "0", "r": "0", "s": "1", "T": "1", "U": "21"} in rows
    assert {"i": "0", "j": "0", "r": "1", "s": "0", "T": "1", "U": "6"} in rows


def test_polynomial_table(tmp_path):
    path = tmp_path / "v.csv"
    assert main(["tables", "--kind", "v", "-q", "2", "-n", "3", "-l", "2", "-m", "2", "-o", str(path)]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(path.read_text(encoding="utf-8"))))
    assert {"i": "1", "j": "0", "poly": "x"} in rows


def test_structure_table_json(capsys):
    assert main(["tables", "--kind", "p", "--format", "json", *SMALL]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert {"key": [0, 1], "index": [0, 0], "target": [0, 1], "value": "1"} in rows


def test_tables_need_parameters():
    assert main(["tables", "--kind", "eigen"]) == EXIT_USAGE


def test_embed(tmp_path):
    report = tmp_path / "embed.json"
    assert main(["embed", "-q", "2", "-n", "3", "-l", "1", "-m", "2", "--show-map", "-o", str(report)]) == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["status"] == "pass"
    assert len(data["map"]) == 12


def test_limit(tmp_path):
    report = tmp_path / "limit.json"
    argv = ["limit", "-p", "2", "-r", "3", "-n", "3", "-m", "2", "--h-min-exp", "13", "--h-max-exp", "20", "-o", str(report)]
    assert main(argv) == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["status"] == "pass"
    assert "cardinality" in data["sequences"]


def test_limit_needs_prime_base():
    assert main(["limit", "-p", "4", "-r", "3", "-n", "3", "-m", "2"]) == EXIT_USAGE


def test_format_output_writes_file(tmp_path, capsys):
    path = tmp_path / "deep" / "out.json"
    assert format_output({"a": "ä"}, path) == path
    assert path.read_text(encoding="utf-8") == '{\n  "a": "ä"\n}\n'
    assert format_output([1]) is None
    assert capsys.readouterr().out == "[\n  1\n]\n"


def test_format_rows():
    with pytest.raises(ValueError, match="Unknown output format"):
        format_rows([], "xml")
