"""Multi-start Nelder-Mead search over generalized Schmidt parameters."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .errors import NumericError, ValidationError
from .states import SchmidtParams, rng_stream, schmidt_state
from .tradeoff import BOUND_SLACK, monogamy_pair_sum, tradeoff_report

REFLECT = 1.0
EXPAND = 2.0
CONTRACT = 0.5
SHRINK = 0.5


@dataclass(frozen=True)
class NelderMeadOptions:
    initial_step: float = 0.1
    xtol: float = 1e-10
    ftol: float = 1e-12
    max_iterations: int = 5000


def nelder_mead(
    objective: Callable[[np.ndarray], float],
    start,
    options: NelderMeadOptions | None = None,
) -> tuple[np.ndarray, float]:
    """Minimize ``objective`` from ``start``.

    Stops when both the spread of objective values and the largest vertex
    distance from the best vertex fall below the tolerances, or after
    ``max_iterations`` iterations. The start point is a vertex of the
    initial simplex, so the returned value never exceeds ``objective(start)``.

    Raises NumericError (carrying the offending point) if the objective
    returns a non-finite value.
    """
    opts = options or NelderMeadOptions()
    x0 = np.atleast_1d(np.asarray(start, dtype=float)).copy()
    d = x0.size
    if d < 1:
        raise ValidationError("nelder_mead needs at least one dimension")

    def f(x: np.ndarray) -> float:
        val = float(objective(x))
        if not math.isfinite(val):
            raise NumericError(f"objective is not finite at {x.tolist()!r}")
        return val

    simplex = [x0]
    for k in range(d):
        v = x0.copy()
        v[k] += opts.initial_step if v[k] == 0 else opts.initial_step * max(1.0, abs(v[k]))
        simplex.append(v)
    values = [f(v) for v in simplex]

    for _ in range(opts.max_iterations):
        order = sorted(range(d + 1), key=values.__getitem__)
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        best, worst = simplex[0], simplex[-1]
        f_spread = values[-1] - values[0]
        x_spread = max(float(np.max(np.abs(v - best))) for v in simplex[1:])
        if f_spread <= opts.ftol and x_spread <= opts.xtol:
            break

        centroid = np.mean(simplex[:-1], axis=0)
        xr = centroid + REFLECT * (centroid - worst)
        fr = f(xr)
        if fr < values[0]:
            xe = centroid + EXPAND * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            # outside contraction
            xc = centroid + CONTRACT * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + CONTRACT * (worst - centroid)
            fc = f(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        for k in range(1, d + 1):
            simplex[k] = best + SHRINK * (simplex[k] - best)
            values[k] = f(simplex[k])

    k = int(np.argmin(values))
    return simplex[k], values[k]


def params_from_vector(x) -> SchmidtParams:
    """Map an unconstrained 6-vector onto SchmidtParams.

    The first five entries are normalized; the last is reflected into
    [0, pi] (psi and 2 pi - psi are related by complex conjugation, which
    leaves every CHSH value unchanged).
    """
    x = np.asarray(x, dtype=float)
    lam = x[:5]
    norm = float(np.linalg.norm(lam))
    if norm == 0.0 or not math.isfinite(norm):
        raise NumericError(f"cannot normalize coefficient vector {lam.tolist()!r}")
    psi = math.fmod(float(x[5]), 2 * math.pi)
    if psi < 0:
        psi += 2 * math.pi
    if psi > math.pi:
        psi = 2 * math.pi - psi
    psi = min(max(psi, 0.0), math.pi)
    return SchmidtParams(tuple(lam / norm), psi)


def saturation_value(params: SchmidtParams) -> float:
    """Sum of squared CHSH maxima over the three pairs."""
    value = tradeoff_report(schmidt_state(params)).squared_sum
    if value > 12 + BOUND_SLACK:
        raise NumericError(f"trade-off sum {value!r} exceeds 12 at {params!r}; pipeline is inconsistent")
    return value


def monogamy_value(params: SchmidtParams, shared: int = 2) -> float:
    return monogamy_pair_sum(schmidt_state(params), shared)


@dataclass(frozen=True)
class SearchConfig:
    objective: Literal["saturation", "monogamy"] = "saturation"
    shared: int = 2
    starts: int = 64
    seed: int = 0
    max_iterations: int = 3000
    tolerance: float = 1e-12
    workers: int = 1

    def __post_init__(self):
        if self.objective not in ("saturation", "monogamy"):
            raise ValidationError(f"unknown objective {self.objective!r}")
        if self.starts < 1:
            raise ValidationError("starts must be at least 1")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        if self.objective == "monogamy" and self.shared not in (0, 1, 2):
            raise ValidationError(f"shared qubit must be 0, 1 or 2, got {self.shared!r}")

    def evaluate(self, params: SchmidtParams) -> float:
        if self.objective == "saturation":
            return saturation_value(params)
        return monogamy_value(params, self.shared)


@dataclass(frozen=True)
class SearchResult:
    best_params: SchmidtParams
    best_value: float
    trace: tuple[float, ...] = field(default=())
    best_start: int = 0


def start_point(seed: int, index: int) -> np.ndarray:
    """Uniform point on the coefficient sphere plus psi uniform in [0, pi]."""
    rng = rng_stream(seed, index)
    lam = rng.standard_normal(5)
    lam /= np.linalg.norm(lam)
    return np.append(lam, rng.uniform(0.0, math.pi))


def run_start(config: SearchConfig, index: int) -> tuple[SchmidtParams, float]:
    options = NelderMeadOptions(
        max_iterations=config.max_iterations, ftol=config.tolerance, xtol=math.sqrt(config.tolerance)
    )
    x, neg = nelder_mead(lambda v: -config.evaluate(params_from_vector(v)), start_point(config.seed, index), options)
    params = params_from_vector(x)
    return params, config.evaluate(params)


def _maximize(config: SearchConfig) -> SearchResult:
    indices = range(config.starts)
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            runs = list(pool.map(run_start, [config] * config.starts, indices))
    else:
        runs = [run_start(config, k) for k in indices]
    trace = tuple(v for _, v in runs)
    # ties go to the lowest start index
    best = max(range(len(runs)), key=lambda k: (trace[k], -k))
    return SearchResult(best_params=runs[best][0], best_value=trace[best], trace=trace, best_start=best)


def maximize_saturation(config: SearchConfig | None = None, **kwargs) -> SearchResult:
    config = config or SearchConfig(objective="saturation", **kwargs)
    if config.objective != "saturation":
        raise ValidationError("maximize_saturation needs objective='saturation'")
    return _maximize(config)


def maximize_monogamy(config: SearchConfig | None = None, **kwargs) -> SearchResult:
    config = config or SearchConfig(objective="monogamy", **kwargs)
    if config.objective != "monogamy":
        raise ValidationError("maximize_monogamy needs objective='monogamy'")
    return _maximize(config)
