"""Reading and writing matrix and decomposition files.

Both file types are JSON objects. Floats are written with Python's
shortest round-trip representation (at most 17 significant digits), so
``read(write(x))`` reproduces every entry bit for bit.

Matrix file::

    {"format": "sympdet-matrix", "version": 1, "d": 2, "ordering": "xpxp",
     "data": [[...], ...], "meta": {...}}

Decomposition file::

    {"format": "sympdet-decomposition", "version": 1, "d": 2,
     "ordering": "xpxp", "method": "det", "verdict": "certified",
     "S": [[...], ...], "lambdas": [...],
     "residuals": {"symp": ..., "rec": ...}, "options": {...}, "info": {...}}

``verdict`` is ``"not-diagonalizable"`` (with ``S`` null) when no real
symplectic exists. A plain whitespace-separated matrix is also accepted
as matrix input; its ordering must then be supplied by the caller.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from .sympbase import INTERLEAVED, as_covariance, normalize_ordering

MATRIX_FORMAT = "sympdet-matrix"
DECOMP_FORMAT = "sympdet-decomposition"
VERSION = 1


@dataclass
class MatrixFile:
    data: np.ndarray
    ordering: str = INTERLEAVED
    meta: dict = field(default_factory=dict)

    @property
    def d(self):
        return self.data.shape[0] // 2


@dataclass
class DecompFile:
    S: np.ndarray | None
    lambdas: np.ndarray
    method: str
    ordering: str = INTERLEAVED
    residuals: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    verdict: str = "certified"
    info: dict = field(default_factory=dict)

    @property
    def d(self):
        return len(self.lambdas)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _jsonable(x.real), "im": _jsonable(x.imag)}
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w") as fh:
        fh.write(text)


def _matrix(rows, what):
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: entries are not numbers") from exc
    if arr.ndim != 2:
        raise ParseError(f"{what}: expected a 2-D array")
    return arr


def dumps_matrix(mf):
    obj = {
        "format": MATRIX_FORMAT,
        "version": VERSION,
        "d": mf.d,
        "ordering": normalize_ordering(mf.ordering),
        "data": mf.data,
        "meta": mf.meta,
    }
    return json.dumps(_jsonable(obj), indent=1) + "\n"


def loads_matrix(text, ordering=None):
    """Parse a matrix file, or a raw whitespace matrix when ``text`` is not JSON."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if obj.get("format") != MATRIX_FORMAT:
            raise ParseError(f"not a {MATRIX_FORMAT} file")
        data = _matrix(obj["data"], "data")
        d = int(obj["d"])
        if data.shape != (2 * d, 2 * d):
            raise ParseError(f"data has shape {data.shape}, expected {(2 * d, 2 * d)}")
        ordering = normalize_ordering(obj.get("ordering", ordering or INTERLEAVED))
        meta = obj.get("meta") or {}
    else:
        try:
            data = np.loadtxt(stripped.splitlines(), ndmin=2)
        except ValueError as exc:
            raise ParseError(f"cannot parse raw matrix: {exc}") from exc
        ordering = normalize_ordering(ordering or INTERLEAVED)
        meta = {}
    as_covariance(data)
    return MatrixFile(data=data, ordering=ordering, meta=meta)


def read_matrix(path, ordering=None):
    return loads_matrix(_read_text(path), ordering)


def write_matrix(path, mf):
    _write_text(path, dumps_matrix(mf))


def dumps_decomp(df):
    obj = {
        "format": DECOMP_FORMAT,
        "version": VERSION,
        "d": df.d,
        "ordering": normalize_ordering(df.ordering),
        "method": df.method,
        "verdict": df.verdict,
        "S": None if df.S is None else df.S,
        "lambdas": df.lambdas,
        "residuals": df.residuals,
        "options": df.options,
        "info": df.info,
    }
    return json.dumps(_jsonable(obj), indent=1) + "\n"


def _complex_or_real(values):
    out = []
    for v in values:
        if isinstance(v, dict):
            out.append(complex(v["re"], v["im"]))
        else:
            out.append(v)
    return np.array(out)


def loads_decomp(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if obj.get("format") != DECOMP_FORMAT:
        raise ParseError(f"not a {DECOMP_FORMAT} file")
    d = int(obj["d"])
    S = None if obj.get("S") is None else _matrix(obj["S"], "S")
    if S is not None and S.shape != (2 * d, 2 * d):
        raise ParseError(f"S has shape {S.shape}, expected {(2 * d, 2 * d)}")
    lambdas = _complex_or_real(obj["lambdas"])
    if len(lambdas) != d:
        raise ParseError(f"expected {d} symplectic eigenvalues, got {len(lambdas)}")
    residuals = {k: (float("nan") if v is None else v) for k, v in (obj.get("residuals") or {}).items()}
    return DecompFile(
        S=S,
        lambdas=lambdas,
        method=obj.get("method", ""),
        ordering=normalize_ordering(obj.get("ordering", INTERLEAVED)),
        residuals=residuals,
        options=obj.get("options") or {},
        verdict=obj.get("verdict", "certified"),
        info=obj.get("info") or {},
    )


def read_decomp(path):
    return loads_decomp(_read_text(path))


def write_decomp(path, df):
    _write_text(path, dumps_decomp(df))
