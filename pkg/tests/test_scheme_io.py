import json

import numpy as np
import pytest

from attschemes.exceptions import ConfigError
from attschemes.utils.scheme_io import FILE_FORMAT, load_scheme, save_scheme


def test_save_and_load(tmp_path, scheme_3211):
    path = save_scheme(scheme_3211, tmp_path / "nested" / "a3211.scheme")
    header = json.loads(path.read_bytes().split(b"\n", 1)[0])
    assert header["format"] == FILE_FORMAT
    assert header["kind"] == "attenuated"
    assert header["nnz"] == [12, 24, 108]

    loaded = load_scheme(path)
    assert loaded.params == scheme_3211.params
    assert np.array_equal(loaded.vertices, scheme_3211.vertices)
    assert np.array_equal(loaded.classes, scheme_3211.classes)


def test_johnson_scheme_file(tmp_path, johnson_332):
    loaded = load_scheme(save_scheme(johnson_332, tmp_path / "j332.scheme"))
    assert loaded.params == johnson_332.params
    assert np.array_equal(loaded.classes, johnson_332.classes)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_scheme(tmp_path / "absent.scheme")


def test_truncated_body(tmp_path, scheme_3211):
    path = save_scheme(scheme_3211, tmp_path / "a.scheme")
    path.write_bytes(path.read_bytes()[:-4])
    with pytest.raises(ConfigError, match="body has"):
        load_scheme(path)


@pytest.mark.parametrize(
    ("edit", "message"),
    [
        (lambda header: header.update(format="other"), "not a scheme file"),
        (lambda header: header.update(version=9), "unsupported scheme file version"),
        (lambda header: header.update(kind="hamming"), "unknown scheme kind"),
        (lambda header: header.update(domain=[[0, 0]]), "header domain"),
    ],
)
def test_bad_header(tmp_path, scheme_3211, edit, message):
    path = save_scheme(scheme_3211, tmp_path / "a.scheme")
    head, body = path.read_bytes().split(b"\n", 1)
    header = json.loads(head)
    edit(header)
    path.write_bytes(json.dumps(header).encode("utf-8") + b"\n" + body)
    with pytest.raises(ConfigError, match=message):
        load_scheme(path)


def test_file_without_header(tmp_path):
    path = tmp_path / "raw.scheme"
    path.write_bytes(b"\x00\x01\x02")
    with pytest.raises(ConfigError, match="no header line"):
        load_scheme(path)
