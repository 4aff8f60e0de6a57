"""JSON state files.

Three layouts are accepted::

    {"type": "pure", "n": 2, "amplitudes": [[re, im], ...]}
    {"type": "density", "n": 2, "matrix": [[[re, im], ...], ...]}
    {"type": "schmidt", "lambda": [l0, l1, l2, l3, l4], "psi": 0.0}

Floats are written with Python's shortest round-trip representation (at most
17 significant digits), so write-then-read reproduces every entry exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .states import DensityMatrix, PureState, SchmidtParams, schmidt_state


def _pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).reshape(-1)]


def _complex_vector(raw, name: str) -> np.ndarray:
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} must be a list of [re, im] pairs") from exc
    if arr.ndim < 2 or arr.shape[-1] != 2:
        raise ValidationError(f"{name} must be built from [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        return {"type": "pure", "n": state.n, "amplitudes": _pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"type": "density", "n": state.n, "matrix": [_pairs(row) for row in state.matrix]}
    if isinstance(state, SchmidtParams):
        return {"type": "schmidt", "lambda": list(state.lam), "psi": state.psi}
    raise ValidationError(f"cannot serialize {type(state).__name__}")


def state_from_dict(data: dict):
    """Parse and validate a state description; returns PureState, DensityMatrix or SchmidtParams."""
    if not isinstance(data, dict) or "type" not in data:
        raise ValidationError("state file must be an object with a 'type' field")
    kind = data["type"]
    if kind == "pure":
        amps = _complex_vector(data.get("amplitudes"), "amplitudes")
        if amps.ndim != 1:
            raise ValidationError("amplitudes must be a flat list of [re, im] pairs")
        state = PureState(amps)
    elif kind == "density":
        mat = _complex_vector(data.get("matrix"), "matrix")
        if mat.ndim != 2:
            raise ValidationError("matrix must be a list of rows of [re, im] pairs")
        state = DensityMatrix(mat)
    elif kind == "schmidt":
        lam = data.get("lambda")
        if not isinstance(lam, list) or len(lam) != 5:
            raise ValidationError("schmidt state needs a 5-element 'lambda' list")
        return SchmidtParams(tuple(lam), data.get("psi", 0.0))
    else:
        raise ValidationError(f"unknown state type {kind!r}")
    if "n" in data and int(data["n"]) != state.n:
        raise ValidationError(f"declared n = {data['n']} but data describes {state.n} qubits")
    return state


def write_state(state, path: str | Path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=1) + "\n")


def read_state(path: str | Path):
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return state_from_dict(data)


def load_quantum_state(path: str | Path):
    """Like ``read_state`` but turns Schmidt parameters into the three-qubit pure state."""
    state = read_state(path)
    if isinstance(state, SchmidtParams):
        return schmidt_state(state)
    return state
