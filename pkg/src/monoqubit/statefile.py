"""JSON state files.

Pure state::

    {"kind": "pure", "dims": [2, 2, 2],
     "amplitudes": [[re, im], [re, im], ...]}

Mixed state (rows of [re, im] pairs)::

    {"kind": "mixed", "dims": [2, 2],
     "matrix": [[[re, im], ...], ...]}

An optional ``"normalize": true`` rescales amplitudes (or the matrix trace)
before validation, for hand-typed files with truncated decimals.
"""

from __future__ import annotations

import json
from math import prod
from pathlib import Path

import numpy as np

from .linalg import DensityMatrix, DomainError, PureState

__all__ = ["StateFileError", "parse_state", "load_state", "dump_state", "save_state"]


class StateFileError(DomainError):
    """A state file failed to parse or validate; the message names the field."""


def _complex(entry, where: str) -> complex:
    if (not isinstance(entry, (list, tuple)) or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
        raise StateFileError(f"{where}: expected a [re, im] pair of numbers, got {entry!r}")
    z = complex(float(entry[0]), float(entry[1]))
    if not np.isfinite(z):
        raise StateFileError(f"{where}: entries must be finite")
    return z


def parse_state(obj, source: str = "<state>"):
    """Build a PureState or DensityMatrix from decoded JSON."""
    if not isinstance(obj, dict):
        raise StateFileError(f"{source}: top level must be a JSON object")
    kind = obj.get("kind")
    if kind not in ("pure", "mixed"):
        raise StateFileError(f"{source}: field 'kind' must be 'pure' or 'mixed', got {kind!r}")
    dims = obj.get("dims")
    if (not isinstance(dims, list) or not dims
            or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 2 for d in dims)):
        raise StateFileError(f"{source}: field 'dims' must be a nonempty list of integers >= 2")
    size = prod(dims)
    normalize = bool(obj.get("normalize", False))

    if kind == "pure":
        amps = obj.get("amplitudes")
        if not isinstance(amps, list):
            raise StateFileError(f"{source}: field 'amplitudes' must be a list")
        if len(amps) != size:
            raise StateFileError(f"{source}: field 'amplitudes' has {len(amps)} entries, "
                                 f"dims {dims} need {size}")
        vec = np.array([_complex(a, f"{source}: amplitudes[{i}]") for i, a in enumerate(amps)])
        norm2 = float(np.vdot(vec, vec).real)
        if normalize and norm2 > 0:
            vec = vec / np.sqrt(norm2)
        elif abs(norm2 - 1.0) > 1e-12:
            raise StateFileError(f"{source}: field 'amplitudes' has squared norm {norm2:.12g}; "
                                 f"violates the unit-trace invariant (|psi|^2 = 1 within 1e-12)")
        return PureState(tuple(dims), vec)

    rows = obj.get("matrix")
    if not isinstance(rows, list) or len(rows) != size:
        raise StateFileError(f"{source}: field 'matrix' must be a list of {size} rows")
    m = np.empty((size, size), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise StateFileError(f"{source}: matrix[{i}] must hold {size} entries")
        for j, entry in enumerate(row):
            m[i, j] = _complex(entry, f"{source}: matrix[{i}][{j}]")
    if np.max(np.abs(m - m.conj().T)) > 1e-10:
        raise StateFileError(f"{source}: field 'matrix' violates the Hermiticity invariant "
                             f"(within 1e-10 elementwise)")
    tr = np.trace(m).real
    if normalize and tr > 0:
        m = m / tr
    elif abs(tr - 1.0) > 1e-10:
        raise StateFileError(f"{source}: field 'matrix' has trace {tr:.12g}; "
                             f"violates the unit-trace invariant (trace = 1 within 1e-10)")
    try:
        return DensityMatrix(tuple(dims), m)
    except DomainError as err:
        raise StateFileError(f"{source}: field 'matrix': {err}") from None


def load_state(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise StateFileError(f"{path}: cannot read state file ({err.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise StateFileError(f"{path}: line {err.lineno} column {err.colno}: {err.msg}") from None
    return parse_state(obj, str(path))


def _pairs(a) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(a).reshape(-1)]


def dump_state(state) -> dict:
    if isinstance(state, PureState):
        return {"kind": "pure", "dims": list(state.dims), "amplitudes": _pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"kind": "mixed", "dims": list(state.dims),
                "matrix": [_pairs(row) for row in state.matrix]}
    raise TypeError(f"cannot serialize {type(state).__name__}")


def save_state(state, path):
    Path(path).write_text(json.dumps(dump_state(state), indent=1) + "\n", encoding="utf-8")
