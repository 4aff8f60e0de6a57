"""Exit criteria, one test per criterion at the stated tolerance.

Each test appends a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from bellscope import cli
from bellscope.chsh import (
    MeasurementSettings,
    chsh_max,
    closed_form_chsh_sq,
    evaluate_bell,
    optimal_settings,
)
from bellscope.scan import fig2_table
from bellscope.search import maximize_monogamy, maximize_saturation, saturation_value
from bellscope.states import SchmidtParams, named_state, random_mixed, random_pure, schmidt_state
from bellscope.tradeoff import (
    frobenius_identity,
    implication_flags,
    monogamy_pair_sum,
    reduced_pair,
    tradeoff_bound,
    tradeoff_report,
)

from conftest import ACCEPTANCE_LINES

TSIRELSON = 2 * math.sqrt(2)
R2 = 1 / math.sqrt(2)
SAMPLES = 10_000
COROLLARY_SAMPLES = 1_000
MONOGAMY_POINT = (-0.71, 0.69, 0.12, -0.01)


def record(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def three_qubit_samples():
    start = time.perf_counter()
    pure = [random_pure(3, 1, k) for k in range(SAMPLES)]
    pure_reports = [tradeoff_report(s) for s in pure]
    mixed_reports = [tradeoff_report(random_mixed(3, 3, 2, k)) for k in range(SAMPLES)]
    corollary = {
        n: [tradeoff_report(random_pure(n, 10 + n, k)).squared_sum for k in range(COROLLARY_SAMPLES)]
        for n in (4, 5)
    }
    elapsed = time.perf_counter() - start
    return pure, pure_reports, mixed_reports, corollary, elapsed


def test_criterion_01_singlet():
    singlet = named_state("singlet")
    value = chsh_max(singlet).value
    settings = MeasurementSettings(a1=[1, 0, 0], a2=[0, 0, 1], b1=[R2, 0, R2], b2=[R2, 0, -R2])
    bell = evaluate_bell(singlet, settings)
    ok = abs(value - TSIRELSON) < 1e-10 and abs(abs(bell) - TSIRELSON) < 1e-10
    assert record("1 singlet maximal violation", ok, f"chsh_max={value:.15f}, <B>={bell:.15f}")


def test_criterion_02_theorem_and_corollary(three_qubit_samples):
    _, pure_reports, mixed_reports, corollary, elapsed = three_qubit_samples
    worst3 = max(r.squared_sum for r in pure_reports + mixed_reports)
    exceptions = sum(r.squared_sum > 12 + 1e-9 for r in pure_reports + mixed_reports)
    cor_ok = all(max(v) <= tradeoff_bound(n) + 1e-9 for n, v in corollary.items())
    worst_cor = {n: max(v) for n, v in corollary.items()}
    ok = exceptions == 0 and cor_ok and elapsed < 60
    assert record(
        "2 trade-off bound 12 and 2n(n-1)",
        ok,
        f"max n=3 sum {worst3:.12f} ({exceptions} exceptions), n=4 max {worst_cor[4]:.6f}/24, "
        f"n=5 max {worst_cor[5]:.6f}/40, {elapsed:.1f}s",
    )


def test_criterion_03_frobenius_identity(three_qubit_samples):
    pure = three_qubit_samples[0]
    worst = max(abs(frobenius_identity(s) - 3) for s in pure)
    assert record("3 Frobenius identity = 3", worst <= 1e-9, f"max deviation {worst:.3e} over {len(pure)} states")


def test_criterion_04_saturation():
    result = maximize_saturation(starts=64, seed=42)
    paper = saturation_value(SchmidtParams.normalized([-0.423, 0.906]))
    ok = abs(result.best_value - 12) <= 1e-6 and abs(paper - 12) <= 1e-2
    assert record("4 saturation", ok, f"optimizer {result.best_value!r}, paper point {paper!r}")


def _paper_monogamy_values():
    state = schmidt_state(SchmidtParams.normalized(MONOGAMY_POINT))
    ac = chsh_max(reduced_pair(state, 0, 2)).value ** 2
    bc = chsh_max(reduced_pair(state, 1, 2)).value ** 2
    return ac, bc, monogamy_pair_sum(state, 2)


def test_criterion_05a_monogamy_ac():
    ac, _, _ = _paper_monogamy_values()
    assert record("5a <CHSH>^2_AC = 4.15 +- 0.02", abs(ac - 4.15) <= 0.02, f"got {ac:.6f}")


def test_criterion_05b_monogamy_bc():
    _, bc, _ = _paper_monogamy_values()
    assert record("5b <CHSH>^2_BC = 3.88 +- 0.02", abs(bc - 3.88) <= 0.02, f"got {bc:.6f}")


def test_criterion_05c_monogamy_sum():
    _, _, total = _paper_monogamy_values()
    ok = abs(total - 8.03) <= 0.03 and total > 8
    assert record("5c AC + BC = 8.03 +- 0.03 and > 8", ok, f"got {total:.6f}")


def test_criterion_05d_monogamy_search():
    result = maximize_monogamy(starts=64, seed=7, shared=2)
    assert record("5d maximize_monogamy >= 8.01", result.best_value >= 8.01, f"best {result.best_value!r}")


def test_criterion_06_closed_form():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(1000):
        lam = rng.standard_normal(4)
        params = SchmidtParams.normalized(lam, rng.uniform(0, math.pi))
        state = schmidt_state(params)
        numeric = [chsh_max(reduced_pair(state, i, j)).value ** 2 for i, j in ((0, 1), (0, 2), (1, 2))]
        worst = max(worst, float(np.max(np.abs(np.array(closed_form_chsh_sq(params)) - numeric))))
    fixed1 = closed_form_chsh_sq(SchmidtParams((1, 0, 0, 0, 0)))
    fixed2 = closed_form_chsh_sq(SchmidtParams((R2, 0, 0.5, 0.5, 0)))
    ok = worst <= 1e-9 and np.allclose(fixed1, (4, 4, 4), atol=1e-9) and np.allclose(fixed2, (4, 4, 2), atol=1e-9)
    assert record("6 closed form vs numeric", ok, f"max deviation {worst:.3e}; fixed {fixed1}, {fixed2}")


def test_criterion_07_optimal_settings():
    worst = 0.0
    for k in range(1000):
        rho = random_mixed(2, 1 + k % 3, 77, k)
        worst = max(worst, abs(abs(evaluate_bell(rho, optimal_settings(rho))) - chsh_max(rho).value))
    assert record("7 optimal settings attain chsh_max", worst <= 1e-8, f"max deviation {worst:.3e}")


def test_criterion_08_implications(three_qubit_samples):
    _, pure_reports, mixed_reports, _, _ = three_qubit_samples
    triples = [[p.value for p in r.pairs] for r in pure_reports + mixed_reports]
    triples += [list(row[1:]) for row in fig2_table()]
    bad = [k for k, t in enumerate(triples) if not implication_flags(t)]
    maximal = sum(max(t) >= TSIRELSON - 1e-6 for t in triples)
    assert record(
        "8 implication properties",
        not bad,
        f"{len(triples)} triples, {maximal} with a maximal pair, {len(bad)} failures",
    )


def test_criterion_09_known_states():
    ghz3 = tradeoff_report(named_state("ghz", 3)).squared_sum
    w3 = tradeoff_report(named_state("w3"))
    ghz4 = tradeoff_report(named_state("ghz", 4)).squared_sum
    w_pairs = [p.value for p in w3.pairs]
    ok = (
        abs(ghz3 - 12) <= 1e-9
        and abs(w3.squared_sum - 32 / 3) <= 1e-9
        and all(abs(v - 4 * math.sqrt(2) / 3) <= 1e-9 for v in w_pairs)
        and abs(ghz4 - 24) <= 1e-9
    )
    assert record("9 known-state table", ok, f"GHZ3 {ghz3!r}, W3 {w3.squared_sum!r}, GHZ4 {ghz4!r}")


def test_criterion_10_verify_suite(capsys):
    start = time.perf_counter()
    code = cli.main(["verify", "--samples", "10000", "--seed", "1"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    ok = code == 0 and elapsed < 60
    assert record("10 verify suite", ok, f"exit {code} in {elapsed:.1f}s; " + out.strip().splitlines()[-1])
