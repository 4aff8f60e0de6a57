import math

import numpy as np
import pytest

from bellscope.chsh import chsh_max, correlation_matrix
from bellscope.errors import ValidationError
from bellscope.states import (
    PureState,
    SchmidtParams,
    named_state,
    random_mixed,
    random_pure,
    schmidt_state,
)
from bellscope.tradeoff import (
    frobenius_identity,
    implication_checks,
    implication_flags,
    monogamy_pair_sum,
    pairwise_chsh,
    pairwise_values_batch,
    reduced_pair,
    tradeoff_bound,
    tradeoff_report,
)

W_PAIR = 4 * math.sqrt(2) / 3


def _values(state):
    return [r.value for _, r in pairwise_chsh(state)]


def test_pairwise_known_states():
    assert np.allclose(_values(named_state("ghz", 3)), [2, 2, 2])
    assert np.allclose(_values(named_state("basis:000")), [2, 2, 2])
    assert np.allclose(_values(named_state("w3")), [W_PAIR] * 3)
    assert [p for p, _ in pairwise_chsh(named_state("ghz", 4))] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_pairwise_pure_and_density_paths_agree():
    for k in range(20):
        psi = random_pure(4, 12, k)
        assert np.allclose(_values(psi), _values(psi.density()), atol=1e-12)


def test_pairwise_rejects_single_qubit():
    with pytest.raises(ValidationError):
        pairwise_chsh(named_state("basis:0"))


def test_batch_values_match_pairwise():
    states = [random_pure(3, 77, k) for k in range(50)] + [named_state("w3"), named_state("basis:000")]
    batch = pairwise_values_batch(np.array([s.amplitudes for s in states]))
    single = np.array([_values(s) for s in states])
    assert np.abs(batch - single).max() < 1e-10


def test_report_examples():
    r = tradeoff_report(named_state("basis:000"))
    assert r.bound == 12 and r.satisfied and abs(r.squared_sum - 12) < 1e-12
    r = tradeoff_report(named_state("w3"))
    assert abs(r.squared_sum - 32 / 3) < 1e-12 and r.violating_pairs == 0
    r = tradeoff_report(schmidt_state(SchmidtParams.normalized([-0.423, 0.906])))
    assert abs(r.squared_sum - 12) < 1e-2
    r = tradeoff_report(named_state("ghz", 4))
    assert r.bound == 24 and abs(r.squared_sum - 24) < 1e-12


def test_report_invariants():
    for k in range(100):
        r = tradeoff_report(random_mixed(3, 2, 4, k))
        assert abs(r.squared_sum - sum(p.squared for p in r.pairs)) < 1e-12
        assert r.satisfied == (r.squared_sum <= r.bound + 1e-9)


def test_bound_values():
    assert [tradeoff_bound(n) for n in (2, 3, 4, 5)] == [4, 12, 24, 40]


def test_theorem_bound_sampled():
    for k in range(1000):
        assert tradeoff_report(random_pure(3, 100, k)).squared_sum <= 12 + 1e-9
        assert tradeoff_report(random_mixed(3, 3, 101, k)).squared_sum <= 12 + 1e-9


@pytest.mark.parametrize("n", [4, 5])
def test_corollary_bound_sampled(n):
    for k in range(200):
        for state in (random_pure(n, 200 + n, k), random_mixed(n, 2, 300 + n, k)):
            assert tradeoff_report(state).squared_sum <= tradeoff_bound(n) + 1e-9


def test_product_states_saturate():
    rng = np.random.default_rng(5)
    for _ in range(100):
        qubits = []
        for _ in range(3):
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            qubits.append(v / np.linalg.norm(v))
        amps = np.kron(np.kron(qubits[0], qubits[1]), qubits[2])
        assert abs(tradeoff_report(PureState(amps)).squared_sum - 12) < 1e-9


def test_frobenius_identity_examples():
    assert abs(frobenius_identity(named_state("basis:000")) - 3) < 1e-12
    # GHZ: every pair reduction has M = diag(0, 0, 1)
    assert abs(frobenius_identity(named_state("ghz", 3)) - 3) < 1e-12
    for k in range(100):
        assert abs(frobenius_identity(random_pure(3, 9, k)) - 3) < 1e-9


def test_frobenius_identity_rejects():
    with pytest.raises(ValidationError):
        frobenius_identity(named_state("ghz", 4))
    with pytest.raises(ValidationError):
        frobenius_identity(named_state("ghz", 3).density())


def test_frobenius_sum_drops_below_3_for_mixed():
    rho = random_mixed(3, 3, 1)
    total = sum(correlation_matrix(reduced_pair(rho, i, j)).frobenius_sq for i, j in ((0, 1), (0, 2), (1, 2)))
    assert total < 3 - 1e-3


def test_monogamy_examples():
    assert abs(monogamy_pair_sum(named_state("basis:000"), 1) - 8) < 1e-12
    for shared in range(3):
        assert abs(monogamy_pair_sum(named_state("ghz", 3), shared) - 8) < 1e-12
    with pytest.raises(ValidationError):
        monogamy_pair_sum(named_state("ghz", 3), 3)


def test_monogamy_paper_instance_values():
    state = schmidt_state(SchmidtParams.normalized([-0.71, 0.69, 0.12, -0.01]))
    bc = chsh_max(reduced_pair(state, 1, 2)).value ** 2
    ac = chsh_max(reduced_pair(state, 0, 2)).value ** 2
    assert abs(bc - 3.88) < 0.02
    # frozen from the numeric pipeline and the closed form (they agree to 1e-12)
    assert abs(ac - 4.116570447910866) < 1e-9
    assert abs(monogamy_pair_sum(state, 2) - (ac + bc)) < 1e-12


def test_independent_settings_monogamy_never_exceeds_8():
    # the two-pair sum stays within 8 even with independent settings per pair
    worst = 0.0
    for k in range(2000):
        for state in (random_pure(3, 404, k), random_mixed(3, 1, 405, k)):
            for shared in range(3):
                worst = max(worst, monogamy_pair_sum(state, shared))
    assert worst <= 8 + 1e-9


def test_implication_examples():
    bell_c = PureState(np.kron(named_state("bell_phi_plus").amplitudes, [1, 0]))
    values = _values(bell_c)
    assert abs(values[0] - 2 * math.sqrt(2)) < 1e-12 and np.allclose(values[1:], 0)
    assert implication_checks(bell_c)
    flags = implication_checks(named_state("w3"))
    assert flags.at_most_two_violations and flags.max_pair_forces_others_classical


def test_implication_flags_logic():
    t = 2 * math.sqrt(2)
    assert not implication_flags([2.1, 2.1, 2.1]).at_most_two_violations
    assert not implication_flags([t, 2.1, 0]).max_pair_forces_others_classical
    assert implication_flags([t, 2.0, 0])


def test_implications_sampled():
    for k in range(2000):
        assert implication_checks(random_pure(3, 606, k))
