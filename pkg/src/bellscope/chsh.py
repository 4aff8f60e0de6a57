"""Pauli correlations, maximal CHSH values and explicit Bell-operator evaluation.

Correlations use the unnormalized convention ``m_st = tr(rho sigma_s x sigma_t)``,
so a pure product state has a correlation matrix with one unit singular value
and the maximal CHSH value is ``2 sqrt(tau1 + tau2)`` with ``tau`` the
eigenvalues of ``M^T M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError, ValidationError
from .linalg import PAULIS, hermitian_eigs, kron
from .states import DensityMatrix, PureState, SchmidtParams, as_density

TSIRELSON = 2 * math.sqrt(2)
IMAG_TOL = 1e-10

# PAULI_PRODUCTS[s, t] = sigma_s (x) sigma_t, s, t = 0..3 with sigma_0 = I
PAULI_PRODUCTS = np.array([[np.kron(a, b) for b in PAULIS] for a in PAULIS])


@dataclass(frozen=True)
class CorrelationMatrix:
    m: np.ndarray
    bloch_a: np.ndarray
    bloch_b: np.ndarray

    @property
    def frobenius_sq(self) -> float:
        return float(np.sum(self.m**2))


@dataclass(frozen=True)
class ChshResult:
    value: float
    tau1: float
    tau2: float
    tau_min: float

    @property
    def squared(self) -> float:
        return self.value**2

    @property
    def violates(self) -> bool:
        return self.value > 2 + 1e-9


@dataclass(frozen=True)
class MeasurementSettings:
    """Bloch directions of Alice's (a1, a2) and Bob's (b1, b2) observables."""

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            vec = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            if vec.shape != (3,):
                raise ValidationError(f"setting {name} must be a 3-vector")
            if abs(np.linalg.norm(vec) - 1.0) > 1e-10:
                raise ValidationError(f"setting {name} is not a unit vector (norm {np.linalg.norm(vec)!r})")
            object.__setattr__(self, name, vec)


def _two_qubit(rho) -> DensityMatrix:
    rho = as_density(rho)
    if rho.n != 2:
        raise ValidationError(f"expected a two-qubit state, got {rho.n} qubits")
    return rho


def correlation_matrix(rho) -> CorrelationMatrix:
    rho = _two_qubit(rho)
    t = np.einsum("ij,stji->st", rho.matrix, PAULI_PRODUCTS)
    if np.max(np.abs(t.imag)) > IMAG_TOL:
        raise ValidationError("Pauli expectations have non-negligible imaginary parts")
    t = t.real
    return CorrelationMatrix(m=t[1:, 1:].copy(), bloch_a=t[1:, 0].copy(), bloch_b=t[0, 1:].copy())


def chsh_from_correlations(m: np.ndarray) -> ChshResult:
    m = np.asarray(m, dtype=float)
    tau1, tau2, tau_min = hermitian_eigs(m.T @ m).eigenvalues
    value = 2.0 * math.sqrt(max(tau1 + tau2, 0.0))
    return ChshResult(value=value, tau1=float(tau1), tau2=float(tau2), tau_min=float(tau_min))


def chsh_max(rho) -> ChshResult:
    """Maximal CHSH mean over all projective settings (Horodecki formula)."""
    return chsh_from_correlations(correlation_matrix(rho).m)


def observable(direction) -> np.ndarray:
    x, y, z = np.asarray(direction, dtype=float)
    return x * PAULIS[1] + y * PAULIS[2] + z * PAULIS[3]


def bell_operator(settings: MeasurementSettings) -> np.ndarray:
    a1, a2 = observable(settings.a1), observable(settings.a2)
    b1, b2 = observable(settings.b1), observable(settings.b2)
    return kron(a1, b1) + kron(a1, b2) + kron(a2, b1) - kron(a2, b2)


def evaluate_bell(rho, settings: MeasurementSettings) -> float:
    """Mean value tr(rho B) of the CHSH operator for the given settings."""
    rho = _two_qubit(rho)
    return float(np.trace(rho.matrix @ bell_operator(settings)).real)


def _unit(v: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm < 1e-14:
        return fallback
    return v / norm


def optimal_settings(rho) -> MeasurementSettings:
    """Settings attaining the Horodecki maximum.

    With ``c, c'`` the two dominant right-singular directions of M and
    ``tan(theta) = sqrt(tau2 / tau1)``, Bob measures ``cos(theta) c +- sin(theta) c'``
    and Alice measures the normalized images of their sum and difference under M.
    """
    m = correlation_matrix(rho).m
    eig = hermitian_eigs(m.T @ m)
    tau1, tau2 = (max(float(t), 0.0) for t in eig.eigenvalues[:2])
    if tau1 <= 1e-14:
        raise DegenerateStateError("correlation matrix vanishes; no setting beats a trivial one")
    c, c2 = eig.eigenvectors[:, 0].real, eig.eigenvectors[:, 1].real
    theta = math.atan2(math.sqrt(tau2), math.sqrt(tau1))
    b1 = math.cos(theta) * c + math.sin(theta) * c2
    b2 = math.cos(theta) * c - math.sin(theta) * c2
    b1, b2 = b1 / np.linalg.norm(b1), b2 / np.linalg.norm(b2)
    a1 = _unit(m @ (b1 + b2), c)
    # M (b1 - b2) vanishes only when tau2 = 0; any unit vector then does
    a2 = _unit(m @ (b1 - b2), np.array([0.0, 0.0, 1.0]))
    return MeasurementSettings(a1, a2, b1, b2)


def analytic_reduced_ab(params: SchmidtParams) -> DensityMatrix:
    """rho_AB of the generalized Schmidt state, written out entry by entry.

    Entry (3, 2) is taken as the conjugate of (2, 3), i.e.
    ``l1 l3 e^{-i psi} + l2 l4``, which is what tracing out C gives.
    """
    l0, l1, l2, l3, l4 = params.lam
    e = complex(math.cos(params.psi), math.sin(params.psi))
    ec = e.conjugate()
    rho = np.array(
        [
            [l0 * l0, 0, l0 * l1 * ec, l0 * l3],
            [0, 0, 0, 0],
            [l0 * l1 * e, 0, l1 * l1 + l2 * l2, l1 * l3 * e + l2 * l4],
            [l0 * l3, 0, l1 * l3 * ec + l2 * l4, l3 * l3 + l4 * l4],
        ],
        dtype=complex,
    )
    return DensityMatrix._trusted(rho)


def analytic_m_ab(params: SchmidtParams) -> CorrelationMatrix:
    l0, l1, l2, l3, l4 = params.lam
    c, s = math.cos(params.psi), math.sin(params.psi)
    m = np.array(
        [
            [2 * l0 * l3, 0.0, 2 * l0 * l1 * c],
            [0.0, -2 * l0 * l3, 2 * l0 * l1 * s],
            [-2 * (l1 * l3 * c + l2 * l4), 2 * l1 * l3 * s, l0**2 + l3**2 + l4**2 - l1**2 - l2**2],
        ]
    )
    # local Bloch vectors follow from the same reduced state
    local = correlation_matrix(analytic_reduced_ab(params))
    return CorrelationMatrix(m=m, bloch_a=local.bloch_a, bloch_b=local.bloch_b)


def _closed_form(x: float, p: float, u: float) -> float:
    # 2[(1-2x)^2 + 4(p + 3u) + sqrt(((1-2x)^2 + 4(p + u))^2 - 16 u (1-2x)^2)]
    base = (1 - 2 * x) ** 2
    disc = (base + 4 * (p + u)) ** 2 - 16 * u * base
    return 2 * (base + 4 * (p + 3 * u) + math.sqrt(max(disc, 0.0)))


def closed_form_chsh_sq(params: SchmidtParams) -> tuple[float, float, float]:
    """Squared maximal CHSH values (AB, AC, BC) for Schmidt states with lambda4 = 0.

    The expressions depend only on the squared coefficients, so they are
    blind to signs and to psi.
    """
    l0, l1, l2, l3, l4 = params.lam
    if abs(l4) > 1e-12:
        raise ValidationError("closed form holds only for lambda4 = 0")
    s0, s1, s2, s3 = l0 * l0, l1 * l1, l2 * l2, l3 * l3
    bc = _closed_form(s0, s0 * s1, s2 * s3)
    ac = _closed_form(s3, s1 * s3, s0 * s2)
    ab = _closed_form(s2, s1 * s2, s0 * s3)
    return ab, ac, bc
