"""Pure and mixed multi-qubit states.

Qubit 0 is the leftmost tensor factor, so basis index ``0b100`` on three
qubits is ``|100>`` (qubit A excited).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .linalg import hermitian_eigs, is_hermitian, partial_trace as _partial_trace

MAX_QUBITS = 12
NORM_TOL = 1e-10
SEED_MASK = (1 << 64) - 1


def _qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if n < 1 or 2**n != dim:
        raise ValidationError(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n", _qubits_for(amps.size))
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized (norm^2 = {norm!r})")

    def density(self) -> "DensityMatrix":
        a = self.amplitudes
        return DensityMatrix._trusted(np.outer(a, a.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on ``n`` qubits.

    Direct construction checks all three properties. Internal constructors
    whose output is valid by construction skip the eigenvalue check.
    """

    matrix: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "n", _qubits_for(m.shape[0]))
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix has non-finite entries")
        if not is_hermitian(m, NORM_TOL):
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
        if m.shape[0] <= 16:
            lowest = hermitian_eigs(m).eigenvalues[-1]
        else:
            lowest = np.linalg.eigvalsh(m)[0]
        if lowest < -1e-9:
            raise ValidationError(f"density matrix is not positive semidefinite (min eigenvalue {lowest:.3g})")

    @classmethod
    def _trusted(cls, matrix: np.ndarray) -> "DensityMatrix":
        obj = object.__new__(cls)
        m = np.asarray(matrix, dtype=complex)
        object.__setattr__(obj, "matrix", m)
        object.__setattr__(obj, "n", _qubits_for(m.shape[0]))
        return obj

    def reduce(self, keep: Sequence[int]) -> "DensityMatrix":
        return partial_trace(self, keep)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the qubits in ``keep`` (result ordered as given)."""
    return DensityMatrix._trusted(_partial_trace(rho.matrix, keep, rho.n))


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.density()
    raise ValidationError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


@dataclass(frozen=True)
class SchmidtParams:
    """Coefficients of lambda0|000> + lambda1 e^{i psi}|100> + lambda2|101> + lambda3|110> + lambda4|111>.

    Signed coefficients are accepted; a sign is just a phase on one amplitude.
    """

    lam: tuple[float, float, float, float, float]
    psi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5:
            raise ValidationError(f"expected 5 coefficients, got {len(lam)}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "psi", float(self.psi))
        if not all(math.isfinite(x) for x in lam) or not math.isfinite(self.psi):
            raise ValidationError("Schmidt parameters must be finite")
        norm = math.fsum(x * x for x in lam)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"sum of squared coefficients is {norm!r}, expected 1")
        if not -1e-12 <= self.psi <= math.pi + 1e-12:
            raise ValidationError(f"psi = {self.psi!r} outside [0, pi]")

    @classmethod
    def normalized(cls, lam: Sequence[float], psi: float = 0.0) -> "SchmidtParams":
        """Rescale ``lam`` to unit norm; pads to five entries with zeros."""
        lam = [float(x) for x in lam] + [0.0] * (5 - len(lam))
        norm = math.sqrt(math.fsum(x * x for x in lam))
        if norm == 0.0:
            raise ValidationError("cannot normalize an all-zero coefficient vector")
        return cls(tuple(x / norm for x in lam), psi)


SCHMIDT_INDICES = (0b000, 0b100, 0b101, 0b110, 0b111)


def schmidt_state(params: SchmidtParams) -> PureState:
    l0, l1, l2, l3, l4 = params.lam
    amps = np.zeros(8, dtype=complex)
    amps[SCHMIDT_INDICES[0]] = l0
    amps[SCHMIDT_INDICES[1]] = l1 * complex(math.cos(params.psi), math.sin(params.psi))
    amps[SCHMIDT_INDICES[2]] = l2
    amps[SCHMIDT_INDICES[3]] = l3
    amps[SCHMIDT_INDICES[4]] = l4
    return PureState(amps)


def named_state(name: str, n: int | None = None) -> PureState:
    """Textbook states.

    ``singlet`` is (|01> - |10>)/sqrt2, the state that some authors write as
    |psi+>. Also available: ``bell_phi_plus``, ``ghz`` (needs ``n``, default 3),
    ``w3`` and ``basis`` (pass the bitstring as ``n``, or use ``"basis:0101"``).
    """
    key = name.strip().lower()
    r2 = 1 / math.sqrt(2)
    if key.startswith("basis:"):
        return _basis(key.split(":", 1)[1])
    if key == "basis":
        if not isinstance(n, str):
            raise ValidationError("basis state needs a bitstring")
        return _basis(n)
    if key == "singlet":
        return PureState([0, r2, -r2, 0])
    if key == "bell_phi_plus":
        return PureState([r2, 0, 0, r2])
    if key == "w3":
        amps = np.zeros(8)
        amps[[0b001, 0b010, 0b100]] = 1 / math.sqrt(3)
        return PureState(amps)
    if key.startswith("ghz"):
        if key != "ghz":
            n = int(key[3:].strip("()_ "))
        n = 3 if n is None else int(n)
        if not 1 <= n <= MAX_QUBITS:
            raise ValidationError(f"ghz needs 1..{MAX_QUBITS} qubits, got {n}")
        amps = np.zeros(2**n)
        amps[0] = amps[-1] = r2
        return PureState(amps)
    raise ValidationError(f"unknown state name {name!r}")


def _basis(bits: str) -> PureState:
    if not bits or set(bits) - {"0", "1"} or len(bits) > MAX_QUBITS:
        raise ValidationError(f"invalid basis bitstring {bits!r}")
    amps = np.zeros(2 ** len(bits))
    amps[int(bits, 2)] = 1.0
    return PureState(amps)


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based generator for sample ``index`` of a batch seeded with ``seed``.

    Streams depend only on (seed, index), so batches can be split across
    workers without changing any sample.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed) & SEED_MASK, int(index)])))


def _haar_amplitudes(n: int, rng: np.random.Generator) -> np.ndarray:
    dim = 2**n
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_pure(n: int, seed: int, index: int = 0) -> PureState:
    """Haar-random ``n``-qubit pure state, deterministic in (seed, index)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValidationError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    return PureState(_haar_amplitudes(n, rng_stream(seed, index)))


def random_mixed(n: int, ancilla_qubits: int, seed: int, index: int = 0) -> DensityMatrix:
    """Reduction of a Haar-random pure state on ``n + ancilla_qubits`` qubits."""
    if ancilla_qubits < 1:
        raise ValidationError("random_mixed needs at least one ancilla qubit")
    total = n + ancilla_qubits
    if n < 1 or total > MAX_QUBITS:
        raise ValidationError(f"total qubit count {total} outside 1..{MAX_QUBITS}")
    psi = _haar_amplitudes(total, rng_stream(seed, index)).reshape(2**n, 2**ancilla_qubits)
    rho = psi @ psi.conj().T
    return DensityMatrix._trusted((rho + rho.conj().T) / 2)


@dataclass(frozen=True)
class Ensemble:
    members: tuple[tuple[float, PureState], ...]

    def __post_init__(self):
        members = tuple((float(p), s) for p, s in self.members)
        if not members:
            raise ValidationError("ensemble is empty")
        for p, s in members:
            if not 0.0 < p <= 1.0:
                raise ValidationError(f"weight {p!r} outside (0, 1]")
            if not isinstance(s, PureState):
                raise ValidationError("ensemble members must be PureState")
        if len({s.n for _, s in members}) != 1:
            raise ValidationError("ensemble members act on different qubit counts")
        total = math.fsum(p for p, _ in members)
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "members", members)


def mix(ensemble: Ensemble | Sequence[tuple[float, PureState]]) -> DensityMatrix:
    if not isinstance(ensemble, Ensemble):
        ensemble = Ensemble(tuple(ensemble))
    rho = sum(p * np.outer(s.amplitudes, s.amplitudes.conj()) for p, s in ensemble.members)
    return DensityMatrix._trusted((rho + rho.conj().T) / 2)
