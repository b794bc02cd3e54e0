import argparse
import json

import pytest

from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError, FieldNotSupportedError
from attschemes.utils.config import (
    DEFAULT_PRECISION,
    ENV_BASES,
    ENV_PRECISION,
    ENV_THREADS,
    RunConfig,
    collect_kwargs,
    get_int_param,
    get_param,
    johnson_params_from,
    load_config_file,
    parse_bases,
    scheme_params_from,
)


def test_get_param_priority(monkeypatch):
    monkeypatch.setenv(ENV_THREADS, "3")
    assert get_param("threads", ENV_THREADS, {"threads": 7}) == 7
    assert get_param("threads", ENV_THREADS, {}) == "3"
    monkeypatch.setenv(ENV_THREADS, "  ")
    assert get_param("threads", ENV_THREADS, {}, 1) == 1


def test_get_int_param_rejects_garbage(monkeypatch):
    monkeypatch.setenv(ENV_PRECISION, "lots")
    with pytest.raises(ConfigError, match=ENV_PRECISION):
        get_int_param("precision", ENV_PRECISION, {})


@pytest.mark.parametrize(("value", "expected"), [("0,5,9", [0, 5, 9]), ("4,", [4]), ([1, 2], [1, 2]), (None, None)])
def test_parse_bases(value, expected):
    assert parse_bases(value) == expected


@pytest.mark.parametrize("value", ["a,b", ",", []])
def test_parse_bases_errors(value):
    with pytest.raises(ConfigError):
        parse_bases(value)


def test_load_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"q": 2, "n": 3, "ell": 2, "m": 2, "bases": "0,1"}), encoding="utf-8")
    assert load_config_file(path)["bases"] == "0,1"


@pytest.mark.parametrize(
    ("content", "message"),
    [
        ('{"q": 2, "colour": "red"}', "unknown config field: colour"),
        ("[1, 2]", "must hold a JSON object"),
        ("{not json", "invalid JSON"),
    ],
)
def test_load_config_file_errors(tmp_path, content, message):
    path = tmp_path / "run.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigError, match=message):
        load_config_file(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="config file not found"):
        load_config_file(tmp_path / "absent.json")


def test_cli_values_override_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"q": 3, "n": 2, "ell": 1, "m": 1, "threads": 4}), encoding="utf-8")
    args = argparse.Namespace(action="verify", func=print, config=str(path), q=None, threads=2, scope="spectra")
    kwargs = collect_kwargs(args)
    assert kwargs == {"q": 3, "n": 2, "ell": 1, "m": 1, "threads": 2, "scope": "spectra"}


def test_run_config_from_kwargs(monkeypatch):
    monkeypatch.setenv(ENV_BASES, "0,6")
    monkeypatch.delenv(ENV_PRECISION, raising=False)
    config = RunConfig.from_kwargs("verify", {"q": 3, "n": 2, "ell": 1, "m": 1, "threads": 2, "scope": "all", "output": "out/report.json"})
    assert config.params == SchemeParams(3, 2, 1, 1)
    assert config.johnson is None
    assert config.bases == [0, 6]
    assert config.threads == 2
    assert config.precision == DEFAULT_PRECISION
    assert config.extra == {"scope": "all"}
    assert str(config.output_path) == "out/report.json"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"format": "xml"},
        {"threads": 0},
        {"precision": 32},
        {"rank_limit": -1},
        {"h_min_exp": 8, "h_max_exp": 8},
        {"bases": "-1"},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ConfigError):
        RunConfig.from_kwargs("limit", kwargs)


def test_parameter_sets():
    assert scheme_params_from({"q": "2", "n": "3", "ell": "2", "m": "2"}) == SchemeParams(2, 3, 2, 2)
    assert scheme_params_from({"r": 3}) is None
    assert johnson_params_from({"r": 3, "n": 3, "m": 2}) == JohnsonParams(3, 3, 2)
    with pytest.raises(ConfigError, match="missing parameter: ell"):
        scheme_params_from({"q": 2, "n": 3, "m": 2})
    with pytest.raises(FieldNotSupportedError):
        scheme_params_from({"q": 6, "n": 3, "ell": 2, "m": 2})
