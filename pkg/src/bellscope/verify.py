"""Seeded Monte Carlo checks of the trade-off relations and supporting identities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chsh import chsh_max, closed_form_chsh_sq
from .scan import fig2_table
from .states import SEED_MASK, SchmidtParams, random_mixed, random_pure, rng_stream, schmidt_state
from .tradeoff import BOUND_SLACK, frobenius_identity, implication_flags, reduced_pair, tradeoff_report

FROBENIUS_TOL = 1e-9
CLOSED_FORM_TOL = 1e-9
MIXED_ANCILLAS = 3


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[int] = field(default_factory=list)
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def record(self, index: int, ok: bool, deviation: float = 0.0) -> None:
        self.checked += 1
        self.worst = max(self.worst, deviation)
        if not ok:
            self.failures.append(index)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}: {self.checked} checked, worst {self.worst:.3e}"
        if self.failures:
            shown = ", ".join(str(k) for k in self.failures[:20])
            line += f"; failing sample indices: {shown}"
        return line


@dataclass
class VerifyReport:
    seed: int
    samples: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


def derive_seed(seed: int, label: int) -> int:
    """Independent 64-bit seed for one suite."""
    return int(np.random.SeedSequence([int(seed) & SEED_MASK, label]).generate_state(1, np.uint64)[0])


def random_schmidt_l4_zero(seed: int, index: int) -> SchmidtParams:
    rng = rng_stream(seed, index)
    lam = rng.standard_normal(4)
    return SchmidtParams.normalized(lam, rng.uniform(0.0, math.pi))


def run_verify(samples: int = 10_000, seed: int = 0, corollary_samples: int | None = None) -> VerifyReport:
    """Run every suite; sample ``k`` of a suite is drawn from stream (suite seed, k)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    corollary_samples = corollary_samples if corollary_samples is not None else max(1, samples // 10)
    pure_seed, mixed_seed, cf_seed, cor_seed = (derive_seed(seed, k) for k in range(4))

    frob = SuiteResult("frobenius identity (pure, n=3)")
    bound_pure = SuiteResult("trade-off bound 12 (pure, n=3)")
    bound_mixed = SuiteResult("trade-off bound 12 (mixed, n=3)")
    implications = SuiteResult("implication flags (pure+mixed, n=3, fig2 grid)")
    closed = SuiteResult("closed form vs numeric (lambda4=0)")
    corollary = SuiteResult("corollary bound 2n(n-1) (n=4,5)")

    for k in range(samples):
        psi = random_pure(3, pure_seed, k)
        dev = abs(frobenius_identity(psi) - 3.0)
        frob.record(k, dev <= FROBENIUS_TOL, dev)
        report = tradeoff_report(psi)
        bound_pure.record(k, report.satisfied, max(report.squared_sum - 12.0, 0.0))
        implications.record(k, bool(implication_flags(p.value for p in report.pairs)))

    for k in range(samples):
        report = tradeoff_report(random_mixed(3, MIXED_ANCILLAS, mixed_seed, k))
        bound_mixed.record(k, report.satisfied, max(report.squared_sum - 12.0, 0.0))
        implications.record(samples + k, bool(implication_flags(p.value for p in report.pairs)))

    for row_index, row in enumerate(fig2_table()):
        implications.record(2 * samples + row_index, bool(implication_flags(row[1:])))

    for k in range(samples):
        params = random_schmidt_l4_zero(cf_seed, k)
        state = schmidt_state(params)
        analytic = closed_form_chsh_sq(params)
        numeric = [chsh_max(reduced_pair(state, i, j)).value ** 2 for i, j in ((0, 1), (0, 2), (1, 2))]
        dev = max(abs(a - b) for a, b in zip(analytic, numeric))
        closed.record(k, dev <= CLOSED_FORM_TOL, dev)

    for offset, n in enumerate((4, 5)):
        for k in range(corollary_samples):
            index = offset * 2 * corollary_samples + 2 * k
            for j, state in enumerate(
                (random_pure(n, cor_seed, index), random_mixed(n, 2, cor_seed, index + 1))
            ):
                report = tradeoff_report(state)
                over = report.squared_sum - report.bound
                corollary.record(index + j, over <= BOUND_SLACK, max(over, 0.0))

    return VerifyReport(seed=seed, samples=samples, suites=[frob, bound_pure, bound_mixed, implications, closed, corollary])
