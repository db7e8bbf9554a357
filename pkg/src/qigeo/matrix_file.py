"""JSON matrix files: ``{"dim": N, "kind": ..., "re": [[...]], "im": [[...]]}``.

Floats are written with Python's shortest round-trip representation, so a
save/load cycle reproduces every entry exactly.
"""
import json

import numpy as np

from qigeo.matfun import as_hermitian
from qigeo.states import DensityMatrix

KINDS = ("hermitian", "density", "hamiltonian")


class MatrixFileError(ValueError):
    pass


def _grid(doc, key, dim):
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixFileError(f"field {key!r} must be a list of {dim} rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFileError(f"field {key!r} must be {dim}x{dim}")
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"field {key!r} holds non-numeric entries") from exc


def parse(doc, expect=None):
    """Validate a decoded document and return ``(kind, matrix)``.

    A ``density`` kind is returned as a :class:`DensityMatrix`; other kinds as
    a Hermitian ndarray. `expect` restricts the accepted kinds.
    """
    if not isinstance(doc, dict):
        raise MatrixFileError("matrix file must hold a JSON object")
    dim, kind = doc.get("dim"), doc.get("kind")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MatrixFileError("field 'dim' must be a positive integer")
    if kind not in KINDS:
        raise MatrixFileError(f"field 'kind' must be one of {KINDS}")
    if expect is not None and kind not in expect:
        raise MatrixFileError(f"expected a matrix of kind {' or '.join(expect)}, got {kind!r}")
    M = _grid(doc, "re", dim) + 1j * _grid(doc, "im", dim)
    try:
        M = as_hermitian(M)
    except ValueError as exc:
        raise MatrixFileError(str(exc)) from exc
    if kind == "density":
        try:
            return kind, DensityMatrix(M)
        except ValueError as exc:
            raise MatrixFileError(str(exc)) from exc
    return kind, M


def load(path, expect=None):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc.msg}") from exc
    return parse(doc, expect)


def to_document(matrix, kind):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    M = np.asarray(getattr(matrix, "matrix", matrix), dtype=complex)
    return {
        "dim": int(M.shape[0]),
        "kind": kind,
        "re": [[float(x) for x in row] for row in M.real],
        "im": [[float(x) for x in row] for row in M.imag],
    }


def dumps(matrix, kind):
    return json.dumps(to_document(matrix, kind), indent=1) + "\n"


def save(path, matrix, kind):
    with open(path, "w") as fh:
        fh.write(dumps(matrix, kind))
