"""JSON matrix files: ``{"rows": n, "cols": n, "entries": [[re, im], ...]}`` row-major."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import MatrixError
from .kernels import as_matrix


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixError(f"malformed matrix object: {exc}") from None
    if rows < 1 or cols < 1:
        raise MatrixError("rows and cols must be positive")
    if len(entries) != rows * cols:
        raise MatrixError(f"expected {rows * cols} entries, got {len(entries)}")
    try:
        vals = [complex(float(re), float(im)) for re, im in entries]
    except (TypeError, ValueError) as exc:
        raise MatrixError(f"malformed entry: {exc}") from None
    return as_matrix(np.array(vals).reshape(rows, cols), square=False)


def read_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_json(obj)


def write_matrix(m, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m)))


def dumps(obj) -> str:
    """Stable JSON encoding used for reports (sorted keys)."""
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=False)


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report) + "\n")
