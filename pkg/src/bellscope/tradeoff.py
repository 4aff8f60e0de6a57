"""Pairwise CHSH maxima over all two-qubit reductions and their trade-off bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .chsh import PAULI_PRODUCTS, TSIRELSON, ChshResult, chsh_from_correlations, correlation_matrix
from .errors import ValidationError
from .linalg import symmetric_eigvals_batch
from .states import MAX_QUBITS, DensityMatrix, PureState, as_density, partial_trace

BOUND_SLACK = 1e-9
CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class PairValue:
    pair: tuple[int, int]
    result: ChshResult

    @property
    def value(self) -> float:
        return self.result.value

    @property
    def squared(self) -> float:
        return self.result.value**2


@dataclass(frozen=True)
class TradeoffReport:
    n: int
    pairs: tuple[PairValue, ...]
    squared_sum: float
    bound: float
    satisfied: bool
    violating_pairs: int


@dataclass(frozen=True)
class ImplicationFlags:
    at_most_two_violations: bool
    max_pair_forces_others_classical: bool

    def __bool__(self) -> bool:
        return self.at_most_two_violations and self.max_pair_forces_others_classical


def tradeoff_bound(n: int) -> float:
    """Upper bound 2n(n-1) on the sum of squared pairwise CHSH maxima."""
    return 2.0 * n * (n - 1)


def _pure_pair_reduction(amps: np.ndarray, n: int, i: int, j: int) -> DensityMatrix:
    rest = [q for q in range(n) if q not in (i, j)]
    x = amps.reshape((2,) * n).transpose([i, j] + rest).reshape(4, -1)
    rho = x @ x.conj().T
    return DensityMatrix._trusted((rho + rho.conj().T) / 2)


def reduced_pair(state, i: int, j: int) -> DensityMatrix:
    """Two-qubit reduction onto qubits (i, j), in that order."""
    if isinstance(state, PureState):
        n = state.n
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValidationError(f"invalid qubit pair ({i}, {j}) for {n} qubits")
        return _pure_pair_reduction(state.amplitudes, n, i, j)
    return partial_trace(as_density(state), (i, j))


def _qubit_count(state) -> int:
    n = state.n
    if not 2 <= n <= MAX_QUBITS:
        raise ValidationError(f"qubit count must be in 2..{MAX_QUBITS}, got {n}")
    return n


def pairwise_chsh(state) -> list[tuple[tuple[int, int], ChshResult]]:
    """Maximal CHSH value of every two-qubit reduction, in (i, j) order with i < j."""
    n = _qubit_count(state)
    return [
        ((i, j), chsh_from_correlations(correlation_matrix(reduced_pair(state, i, j)).m))
        for i, j in combinations(range(n), 2)
    ]


def tradeoff_report(state) -> TradeoffReport:
    pairs = tuple(PairValue(p, r) for p, r in pairwise_chsh(state))
    n = state.n
    squared_sum = math.fsum(p.squared for p in pairs)
    bound = tradeoff_bound(n)
    return TradeoffReport(
        n=n,
        pairs=pairs,
        squared_sum=squared_sum,
        bound=bound,
        satisfied=squared_sum <= bound + BOUND_SLACK,
        violating_pairs=sum(p.value > CLASSICAL_BOUND + BOUND_SLACK for p in pairs),
    )


def frobenius_identity(psi: PureState) -> float:
    """Sum over the three pairs of ||M||_F^2; equal to 3 for every pure three-qubit state."""
    if not isinstance(psi, PureState):
        raise ValidationError("frobenius_identity needs a pure state")
    if psi.n != 3:
        raise ValidationError(f"frobenius_identity needs three qubits, got {psi.n}")
    return math.fsum(
        correlation_matrix(reduced_pair(psi, i, j)).frobenius_sq for i, j in combinations(range(3), 2)
    )


def monogamy_pair_sum(state, shared: int) -> float:
    """Sum of squared CHSH maxima of the two pairs containing ``shared``.

    Each pair is maximized with its own settings, so the shared qubit may be
    measured differently in the two tests.
    """
    if state.n != 3:
        raise ValidationError(f"monogamy_pair_sum needs three qubits, got {state.n}")
    if shared not in (0, 1, 2):
        raise ValidationError(f"shared qubit index must be 0, 1 or 2, got {shared!r}")
    total = 0.0
    for other in range(3):
        if other == shared:
            continue
        pair = tuple(sorted((shared, other)))
        total += chsh_from_correlations(correlation_matrix(reduced_pair(state, *pair)).m).value ** 2
    return total


def implication_flags(values) -> ImplicationFlags:
    """Consequences of the three-qubit bound for a triple of pair values."""
    values = list(values)
    violations = sum(v > CLASSICAL_BOUND + BOUND_SLACK for v in values)
    forced = True
    for k, v in enumerate(values):
        if v >= TSIRELSON - 1e-6:
            others = values[:k] + values[k + 1 :]
            forced = forced and all(o <= CLASSICAL_BOUND + 1e-6 for o in others)
    return ImplicationFlags(at_most_two_violations=violations <= 2, max_pair_forces_others_classical=forced)


def implication_checks(state) -> ImplicationFlags:
    if state.n != 3:
        raise ValidationError(f"implication_checks needs three qubits, got {state.n}")
    return implication_flags(r.value for _, r in pairwise_chsh(state))


def pairwise_values_batch(amplitudes) -> np.ndarray:
    """Pairwise CHSH maxima for a stack of pure states, shape (N, 2**n) -> (N, n(n-1)/2).

    Columns follow the (i, j) order of ``pairwise_chsh``. Amplitudes are
    assumed normalized.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.ndim != 2:
        raise ValidationError("expected a 2-D stack of amplitude vectors")
    count, dim = amps.shape
    n = dim.bit_length() - 1
    if 2**n != dim or not 2 <= n <= MAX_QUBITS:
        raise ValidationError(f"amplitude length {dim} is not 2**n with 2 <= n <= {MAX_QUBITS}")
    psi = amps.reshape((count,) + (2,) * n)
    out = []
    for i, j in combinations(range(n), 2):
        rest = [q + 1 for q in range(n) if q not in (i, j)]
        x = psi.transpose([0, i + 1, j + 1] + rest).reshape(count, 4, -1)
        rho = x @ x.conj().transpose(0, 2, 1)
        t = np.einsum("nij,stji->nst", rho, PAULI_PRODUCTS).real
        m = t[:, 1:, 1:]
        tau = symmetric_eigvals_batch(m.transpose(0, 2, 1) @ m)
        out.append(2.0 * np.sqrt(np.clip(tau[:, 0] + tau[:, 1], 0.0, None)))
    return np.stack(out, axis=1)
