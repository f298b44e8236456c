"""State files, the named-state mini-language, and CSV helpers."""

from __future__ import annotations

import json
import math
import os
import re

import numpy as np

from .errors import EntkError, ValidationError
from .families import FAMILIES
from .states import (
    TOL,
    PureState,
    bell,
    check_dims,
    ghz,
    maximally_entangled,
    pure_state,
    validate_density,
    w_state,
)


class ParseError(EntkError):
    """Malformed input text; carries an optional (line, column) position."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


# ------------------------------------------------------------------ named states

_NAMED = re.compile(r"^(?P<name>[a-z0-9]+)(?::(?P<arg>.*))?$")


def parse_named_state(spec: str):
    """``ghz:N``, ``w:N``, ``bell:phi+``, ``maxent:d``, ``hor33:a=0.5``, ``hor24:a=..``, ``horror:a=..``."""
    m = _NAMED.match(spec.strip().lower())
    if not m:
        raise ParseError(f"cannot parse state spec {spec!r}")
    name, arg = m["name"], m["arg"]
    try:
        if name == "ghz":
            return ghz(int(arg))
        if name == "w":
            return w_state(int(arg))
        if name == "maxent":
            return maximally_entangled(int(arg))
        if name == "bell":
            return bell(arg or "")
        if name in FAMILIES:
            if arg is None:
                raise ParseError(f"{name} needs a parameter, e.g. {name}:a=0.5")
            key, _, val = arg.partition("=")
            if not val:
                key, val = "a", key
            if key != "a":
                raise ParseError(f"{name}: unknown parameter {key!r}")
            return FAMILIES[name](float(val))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ParseError(f"bad argument in state spec {spec!r}: {exc}") from exc
    raise ParseError(f"unknown state name {name!r}")


# ------------------------------------------------------------------ JSON state files


def _complex_list(a) -> list:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in a]
    return [_complex_list(row) for row in a]


def _to_complex(obj, ndim, what):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: entries must be [re, im] number pairs") from exc
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise ParseError(f"{what}: expected a {ndim}-d array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_dict(state, meta: dict | None = None) -> dict:
    out = {"dims": list(state.dims)}
    if isinstance(state, PureState):
        out["vector"] = _complex_list(state.vector)
    else:
        out["matrix"] = _complex_list(state.matrix)
    if meta:
        out["meta"] = meta
    return out


def dumps_state(state, meta: dict | None = None) -> str:
    return json.dumps(state_to_dict(state, meta), sort_keys=True) + "\n"


def state_from_dict(obj, tol: float = TOL):
    if not isinstance(obj, dict) or "dims" not in obj:
        raise ParseError("state file must be an object with a 'dims' key")
    try:
        dims = tuple(int(d) for d in obj["dims"])
    except (TypeError, ValueError) as exc:
        raise ParseError("'dims' must be a list of integers") from exc
    dims = check_dims(dims)
    if ("vector" in obj) == ("matrix" in obj):
        raise ParseError("state file needs exactly one of 'vector' or 'matrix'")
    if "vector" in obj:
        return pure_state(_to_complex(obj["vector"], 1, "vector"), dims, tol)
    return validate_density(_to_complex(obj["matrix"], 2, "matrix"), dims, tol)


def loads_state(text: str, tol: float = TOL):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return state_from_dict(obj, tol)


def load_state(path: str, tol: float = TOL):
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read(), tol)


def resolve_state(ref: str, tol: float = TOL):
    """An existing JSON state file, otherwise a named-state spec."""
    if os.path.exists(ref):
        return load_state(ref, tol)
    if ":" in ref:
        return parse_named_state(ref)
    raise ParseError(f"no such state file or named state: {ref!r}")


# ------------------------------------------------------------------ CSV


def fmt(x) -> str:
    """Locale-free float formatting with 17 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def csv_lines(header: list[str], rows) -> list[str]:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(fmt(v) for v in row))
    return out


def read_csv(text: str) -> tuple[list[str], np.ndarray]:
    """Parse CSV with optional '#' comment lines; returns (column names, data)."""
    header, rows = None, []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        cells = [c.strip() for c in s.split(",")]
        if header is None:
            try:
                rows.append([float(c) for c in cells])
                header = [f"c{i}" for i in range(len(cells))]
            except ValueError:
                header = cells
            continue
        if len(cells) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(cells)}", lineno, 1)
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            col = next(i for i, c in enumerate(cells) if not _is_float(c))
            col_pos = sum(len(c) + 1 for c in line.split(",")[:col]) + 1
            raise ParseError(f"non-numeric field {cells[col]!r}", lineno, col_pos) from exc
    if header is None:
        raise ParseError("empty CSV input")
    return header, np.array(rows, dtype=float).reshape(-1, len(header))


def _is_float(s):
    try:
        float(s)
    except ValueError:
        return False
    return True
