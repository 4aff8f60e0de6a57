"""Small dense linear algebra: Pauli constants, Jacobi eigensolver, partial trace."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NumericError, ValidationError

__all__ = [
    "IDENTITY",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "EigenDecomposition",
    "hermitian_eigs",
    "partial_trace",
    "singular_values_3x3",
    "kron",
    "is_hermitian",
    "symmetric_eigvals_batch",
]

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# sigma^0 .. sigma^3
PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)

MAX_DIM = 16
OFF_DIAGONAL_THRESHOLD = 1e-13
MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def is_hermitian(h: np.ndarray, atol: float = 1e-10) -> bool:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return bool(np.all(np.abs(h - h.conj().T) <= atol))


def _off_norm(a: list) -> float:
    total = 0.0
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i != j:
                total += abs(x) ** 2
    return math.sqrt(total)


def hermitian_eigs(h, atol: float = 1e-10) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Real symmetric input stays in real arithmetic. Each complex off-diagonal
    element is first made real by a diagonal phase, then annihilated by an
    ordinary Givens rotation. Sweeps stop once the off-diagonal Frobenius norm
    drops below ``OFF_DIAGONAL_THRESHOLD`` relative to the matrix norm.

    Raises
    ------
    ValidationError
        If ``h`` is not square, has dimension outside 1..16, or is not
        Hermitian within ``atol``.
    NumericError
        If the sweep budget is exhausted or the input is not finite.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {h.shape}")
    d = h.shape[0]
    if not 1 <= d <= MAX_DIM:
        raise ValidationError(f"dimension {d} outside supported range 1..{MAX_DIM}")
    if not np.all(np.isfinite(h)):
        raise NumericError("matrix has non-finite entries")
    if not is_hermitian(h, atol):
        raise ValidationError("matrix is not Hermitian within tolerance")

    real = not np.iscomplexobj(h) or not np.any(h.imag)
    # symmetrize so rounding in the input cannot bias the result
    sym = (h + h.conj().T) / 2
    # plain Python scalars: numpy per-element overhead dominates at these sizes
    a = (sym.real if real else sym).tolist()
    v = [[1.0 if i == j else 0.0 for j in range(d)] for i in range(d)]

    scale = max(float(np.linalg.norm(sym)), 1.0)
    threshold = OFF_DIAGONAL_THRESHOLD * scale
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p][q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                # phase that makes the (p, q) element real and positive
                phase = apq / r
                ph = phase.conjugate()
                theta = (a[q][q].real - a[p][p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sph = s * ph
                cph = c * ph
                sphase = s * phase
                cphase = c * phase
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
                rp, rq = a[p], a[q]
                for k in range(d):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - sphase * y
                    rq[k] = s * x + cphase * y
                rp[q] = 0.0
                rq[p] = 0.0
                rp[p] = rp[p].real
                rq[q] = rq[q].real
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
    else:
        if _off_norm(a) > threshold:
            raise NumericError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")

    w = np.array([a[i][i].real for i in range(d)])
    vec = np.array(v, dtype=float if real else complex)
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(eigenvalues=w[order], eigenvectors=vec[:, order])


def _check_keep(keep: Sequence[int], n: int) -> tuple[int, ...]:
    keep = tuple(int(k) for k in keep)
    if len(set(keep)) != len(keep):
        raise ValidationError(f"duplicate qubit index in {keep}")
    for k in keep:
        if not 0 <= k < n:
            raise ValidationError(f"qubit index {k} out of range for {n} qubits")
    return keep


def partial_trace(rho: np.ndarray, keep: Sequence[int], n: int | None = None) -> np.ndarray:
    """Reduce an ``n``-qubit operator to the qubits in ``keep``, in that order.

    Qubit 0 is the leftmost tensor factor. The result is symmetrized to
    remove Hermiticity drift.
    """
    rho = np.asarray(rho)
    dim = rho.shape[0]
    if n is None:
        n = dim.bit_length() - 1
    if rho.shape != (2**n, 2**n):
        raise ValidationError(f"operator of shape {rho.shape} does not act on {n} qubits")
    keep = _check_keep(keep, n)
    traced = [q for q in range(n) if q not in keep]
    perm = list(keep) + traced
    dk = 2 ** len(keep)
    dt = 2 ** len(traced)
    t = rho.reshape((2,) * (2 * n))
    t = t.transpose(perm + [n + q for q in perm]).reshape(dk, dt, dk, dt)
    out = np.einsum("aibi->ab", t)
    return (out + out.conj().T) / 2


def singular_values_3x3(m) -> np.ndarray:
    """Singular values of a real 3x3 matrix, descending.

    Computed as square roots of the eigenvalues of ``m.T @ m``; tiny negative
    eigenvalues from rounding are clipped to zero.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {m.shape}")
    w = hermitian_eigs(m.T @ m).eigenvalues
    return np.sqrt(np.clip(w, 0.0, None))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def symmetric_eigvals_batch(a) -> np.ndarray:
    """Eigenvalues (descending) of a stack of real symmetric matrices, shape (N, d, d).

    Same cyclic Jacobi scheme as ``hermitian_eigs``, with each rotation applied
    to the whole stack at once. Matrices that have already converged get the
    identity rotation.
    """
    a = np.array(a, dtype=float, copy=True)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValidationError(f"expected a stack of square matrices, got shape {a.shape}")
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]))
    d = a.shape[1]
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix stack has non-finite entries")
    if np.max(np.abs(a - a.transpose(0, 2, 1))) > 1e-10:
        raise ValidationError("matrix stack is not symmetric within tolerance")
    a = (a + a.transpose(0, 2, 1)) / 2
    off_mask = ~np.eye(d, dtype=bool)
    threshold = OFF_DIAGONAL_THRESHOLD * np.maximum(np.linalg.norm(a, axis=(1, 2)), 1.0)
    for _ in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(a[:, off_mask] ** 2, axis=1))
        if np.all(off <= threshold):
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[:, p, q]
                active = np.abs(apq) > 1e-300
                safe = np.where(active, apq, 1.0)
                theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                big = np.abs(theta) > 1e150
                theta_c = np.where(big, 1.0, theta)
                t = np.sign(theta_c) / (np.abs(theta_c) + np.sqrt(theta_c * theta_c + 1.0))
                t = np.where(theta_c == 0, 1.0, t)
                t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cc, ss = c[:, None], s[:, None]
                col_p = a[:, :, p].copy()
                col_q = a[:, :, q].copy()
                a[:, :, p] = cc * col_p - ss * col_q
                a[:, :, q] = ss * col_p + cc * col_q
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :].copy()
                a[:, p, :] = cc * row_p - ss * row_q
                a[:, q, :] = ss * row_p + cc * row_q
                a[active, p, q] = 0.0
                a[active, q, p] = 0.0
    else:
        off = np.sqrt(np.sum(a[:, off_mask] ** 2, axis=1))
        if np.any(off > threshold):
            raise NumericError(f"batched Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
    w = np.diagonal(a, axis1=1, axis2=2)
    return -np.sort(-w, axis=1)
