import itertools
import math

import numpy as np
import pytest
from scipy.optimize import minimize

SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def index_sum_partial_trace(rho, n, keep):
    """Reduced operator by explicit summation over basis indices (test oracle)."""
    keep = list(keep)
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def full_index(kbits, tbits):
        bits = [0] * n
        for q, b in zip(keep, kbits):
            bits[q] = b
        for q, b in zip(traced, tbits):
            bits[q] = b
        return int("".join(map(str, bits)), 2) if bits else 0

    for r, kr in enumerate(itertools.product((0, 1), repeat=len(keep))):
        for c, kc in enumerate(itertools.product((0, 1), repeat=len(keep))):
            out[r, c] = sum(
                rho[full_index(kr, t), full_index(kc, t)] for t in itertools.product((0, 1), repeat=len(traced))
            )
    return out


def _direction(theta, phi):
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def _obs(v):
    return v[0] * SIGMA[0] + v[1] * SIGMA[1] + v[2] * SIGMA[2]


def _alice_best(rho, bob_op):
    # max over unit a of tr(rho (a.sigma) x X) is the length of the vector of tr(rho sigma_s x X)
    v = np.array([np.trace(rho @ np.kron(s, bob_op)).real for s in SIGMA])
    return np.linalg.norm(v)


def brute_force_chsh(rho, grid=7):
    """Maximal CHSH mean by searching over settings directly (no correlation-matrix formula).

    Grid over Bob's two directions, exact inner maximization over Alice's two
    directions, then local refinement of the best grid point.
    """
    def value(angles):
        b1 = _obs(_direction(angles[0], angles[1]))
        b2 = _obs(_direction(angles[2], angles[3]))
        return _alice_best(rho, b1 + b2) + _alice_best(rho, b1 - b2)

    thetas = np.linspace(0, math.pi, grid)
    phis = np.linspace(0, 2 * math.pi, 2 * grid - 1)[:-1]
    dirs = [(t, p) for t in thetas for p in phis]
    best, best_x = -1.0, None
    for d1 in dirs:
        for d2 in dirs[::3]:
            v = value(d1 + d2)
            if v > best:
                best, best_x = v, d1 + d2
    res = minimize(lambda x: -value(x), np.array(best_x), method="Nelder-Mead",
                   options=dict(xatol=1e-12, fatol=1e-14, maxiter=20000))
    return max(best, -res.fun)


def random_density(rng, n=2, rank=None):
    dim = 2**n
    rank = rank or dim
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, d=2):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
