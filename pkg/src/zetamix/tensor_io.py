"""Self-describing binary tensor files and integer-label CSVs.

Tensor file layout, byte-exact:

* line 1: UTF-8 JSON header terminated by a single ``\\n``, e.g.
  ``{"dtype": "f32", "shape": [2, 3], "order": "row-major", "endian": "little"}``
* remainder: raw element bytes, little-endian, row-major, exactly
  ``itemsize * prod(shape)`` of them.

Reads reject anything that deviates, reporting the byte offset involved.
Writes are atomic (temp file + rename).  Round-tripping any supported array
is bit-identical.
"""

from __future__ import annotations

import json
import math
import os
import tempfile

import numpy as np

from .errors import FormatError

DTYPES = {"f32": np.dtype("<f4"), "f64": np.dtype("<f8")}
_DTYPE_NAMES = {np.dtype("float32"): "f32", np.dtype("float64"): "f64"}
_MAX_HEADER_BYTES = 65536


def _atomic_write(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_tensor(path: str, matrix: np.ndarray) -> None:
    """Write an f32/f64 array; other dtypes are rejected."""
    arr = np.asarray(matrix)
    name = _DTYPE_NAMES.get(arr.dtype)
    if name is None:
        raise FormatError(f"unsupported dtype {arr.dtype}; expected float32 or float64")
    header = {
        "dtype": name,
        "shape": list(arr.shape),
        "order": "row-major",
        "endian": "little",
    }
    body = np.ascontiguousarray(arr).astype(DTYPES[name], copy=False).tobytes()
    _atomic_write(path, json.dumps(header).encode("utf-8") + b"\n" + body)


def read_tensor(path: str) -> np.ndarray:
    """Read a tensor file back into a writable numpy array."""
    with open(path, "rb") as fh:
        raw = fh.read(_MAX_HEADER_BYTES)
        newline = raw.find(b"\n")
        if newline < 0:
            raise FormatError(
                f"{path}: no header newline within the first {len(raw)} bytes"
            )
        header_bytes = raw[:newline]
        offset = newline + 1
        try:
            header = json.loads(header_bytes.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FormatError(f"{path}: malformed JSON header at offset 0: {exc}") from exc
        payload = raw[offset:] + fh.read()

    if not isinstance(header, dict):
        raise FormatError(f"{path}: header at offset 0 must be a JSON object")
    dtype_name = header.get("dtype")
    if dtype_name not in DTYPES:
        raise FormatError(f"{path}: unsupported dtype {dtype_name!r} in header at offset 0")
    if header.get("order") != "row-major":
        raise FormatError(f"{path}: unsupported order {header.get('order')!r} in header at offset 0")
    if header.get("endian") != "little":
        raise FormatError(f"{path}: unsupported endianness {header.get('endian')!r} in header at offset 0")
    shape = header.get("shape")
    if (
        not isinstance(shape, list)
        or any(not isinstance(s, int) or isinstance(s, bool) or s < 0 for s in shape)
    ):
        raise FormatError(f"{path}: shape must be a list of non-negative integers (header at offset 0)")

    dtype = DTYPES[dtype_name]
    expected = int(math.prod(shape)) * dtype.itemsize
    if len(payload) != expected:
        raise FormatError(
            f"{path}: expected {expected} payload bytes at offset {offset}, "
            f"found {len(payload)}"
        )
    return np.frombuffer(payload, dtype=dtype).reshape(shape).copy()


def write_labels(path: str, labels: np.ndarray) -> None:
    """Write integer class labels as CSV, one per line, with a header row."""
    arr = np.asarray(labels)
    if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
        raise FormatError("labels must be a 1-D integer array")
    if arr.size and arr.min() < 0:
        raise FormatError("labels must be non-negative")
    lines = ["label"] + [str(int(v)) for v in arr]
    _atomic_write(path, ("\n".join(lines) + "\n").encode("utf-8"))


def read_labels(path: str) -> np.ndarray:
    """Read a label CSV (optional 'label' header) into an int64 array."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if lines and lines[0].lower() == "label":
        lines = lines[1:]
    values = []
    for i, line in enumerate(lines):
        try:
            v = int(line)
        except ValueError as exc:
            raise FormatError(f"{path}: line {i + 1}: not an integer: {line!r}") from exc
        if v < 0:
            raise FormatError(f"{path}: line {i + 1}: negative label {v}")
        values.append(v)
    return np.asarray(values, dtype=np.int64)
