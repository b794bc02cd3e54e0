"""
Scheme files.

A scheme file is one UTF-8 JSON header line followed by a binary body:

    {"format": "attschemes-scheme", "version": 1, "kind": ..., "params": {...},
     "vertex_shape": [...], "domain": [[a, b], ...], "nnz": [...]}\\n
    vertex array                 uint8, C order, shape vertex_shape
    for each class in domain:
        indptr                   int32 little-endian, |X| + 1 entries
        indices                  int32 little-endian, nnz[k] entries

Vertices are RREF bases (attenuated) or words (Johnson); classes are the
adjacency matrices in CSR form with sorted column lists.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError
from attschemes.mods.attenuated import SchemeInstance

logger = logging.getLogger(__name__)

FILE_FORMAT = "attschemes-scheme"
FILE_VERSION = 1
INDEX_DTYPE = np.dtype("<i4")


def _header(instance: SchemeInstance, nnz: List[int]) -> Dict[str, Any]:
    params = instance.params
    return {
        "format": FILE_FORMAT,
        "version": FILE_VERSION,
        "kind": "johnson" if isinstance(params, JohnsonParams) else "attenuated",
        "params": params.to_dict(),
        "vertex_shape": list(instance.vertices.shape),
        "domain": [list(ij) for ij in instance.domain],
        "nnz": nnz,
    }


def save_scheme(instance: SchemeInstance, file_path: Path) -> Path:
    """
    Write a scheme file.

    Args:
        instance: Built scheme
        file_path: Output file path (parent directories are created)

    Returns:
        The output path
    """
    csr = [instance.adjacency_csr(ij) for ij in instance.domain]
    header = _header(instance, [int(indices.size) for _, indices in csr])
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "wb") as f:
        f.write(json.dumps(header, sort_keys=False).encode("utf-8"))
        f.write(b"\n")
        f.write(np.ascontiguousarray(instance.vertices, dtype=np.uint8).tobytes())
        for indptr, indices in csr:
            f.write(indptr.astype(INDEX_DTYPE).tobytes())
            f.write(indices.astype(INDEX_DTYPE).tobytes())
    logger.info("Saved %r to %s", instance, file_path)
    return file_path


def _params_from_header(header: Dict[str, Any]) -> Union[SchemeParams, JohnsonParams]:
    kind = header.get("kind")
    values = header.get("params") or {}
    try:
        if kind == "attenuated":
            return SchemeParams(**values)
        if kind == "johnson":
            return JohnsonParams(**values)
    except TypeError as e:
        raise ConfigError(f"malformed params in scheme file header: {values}") from e
    raise ConfigError(f"unknown scheme kind in header: {kind!r}")


def load_scheme(file_path: Path) -> SchemeInstance:
    """
    Read a scheme file written by save_scheme.

    Raises:
        ConfigError: If the file is missing, truncated or inconsistent with its header
    """
    try:
        raw = Path(file_path).read_bytes()
    except FileNotFoundError as e:
        raise ConfigError(f"scheme file not found: {file_path}") from e

    newline = raw.find(b"\n")
    if newline < 0:
        raise ConfigError(f"{file_path} has no header line")
    try:
        header = json.loads(raw[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"{file_path} has an unreadable header: {e}") from e
    if not isinstance(header, dict) or header.get("format") != FILE_FORMAT:
        raise ConfigError(f"{file_path} is not a scheme file")
    if header.get("version") != FILE_VERSION:
        raise ConfigError(f"unsupported scheme file version {header.get('version')} (expected {FILE_VERSION})")

    params = _params_from_header(header)
    domain = [tuple(ij) for ij in header["domain"]]
    if domain != params.domain:
        raise ConfigError(f"{file_path}: header domain does not match {params.to_dict()}")
    shape = tuple(header["vertex_shape"])
    size = shape[0]
    if size != params.vertex_count:
        raise ConfigError(f"{file_path}: {size} vertices, expected {params.vertex_count}")

    body = memoryview(raw)[newline + 1 :]
    offset = int(np.prod(shape))
    expected = offset + sum((size + 1 + count) * INDEX_DTYPE.itemsize for count in header["nnz"])
    if len(body) != expected:
        raise ConfigError(f"{file_path}: body has {len(body)} bytes, header implies {expected}")
    vertices = np.frombuffer(body[:offset], dtype=np.uint8).reshape(shape).copy()

    classes = np.full((size, size), -1, dtype=np.int16)
    for k, count in enumerate(header["nnz"]):
        indptr = np.frombuffer(body[offset : offset + (size + 1) * INDEX_DTYPE.itemsize], dtype=INDEX_DTYPE)
        offset += (size + 1) * INDEX_DTYPE.itemsize
        indices = np.frombuffer(body[offset : offset + count * INDEX_DTYPE.itemsize], dtype=INDEX_DTYPE)
        offset += count * INDEX_DTYPE.itemsize
        if int(indptr[0]) != 0 or int(indptr[-1]) != count or np.any(np.diff(indptr) < 0):
            raise ConfigError(f"{file_path}: class {domain[k]} has a corrupt row index")
        rows = np.repeat(np.arange(size), np.diff(indptr))
        classes[rows, indices] = k
    if np.any(classes < 0):
        raise ConfigError(f"{file_path}: the relation classes do not cover every pair")

    instance = SchemeInstance(params, vertices, classes)
    logger.info("Loaded %r from %s", instance, file_path)
    return instance
