"""Grid scans of pairwise CHSH maxima over the two Schmidt-state families used for plotting."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from .errors import ValidationError
from .states import SCHMIDT_INDICES
from .tradeoff import pairwise_values_batch

DEFAULT_RESOLUTION = {"fig1": 201, "fig2": 721}
HEADERS = {
    "fig1": ("alpha", "beta", "q_ab", "q_ac", "q_bc"),
    "fig2": ("theta", "q_ab", "q_ac", "q_bc"),
}


@dataclass(frozen=True)
class ScanSpec:
    figure: Literal["fig1", "fig2"]
    resolution: int | None = None
    out: str | Path | None = None

    def __post_init__(self):
        if self.figure not in HEADERS:
            raise ValidationError(f"unknown figure {self.figure!r}; expected fig1 or fig2")
        if self.resolution is None:
            object.__setattr__(self, "resolution", DEFAULT_RESOLUTION[self.figure])
        if int(self.resolution) < 2:
            raise ValidationError("resolution must be at least 2")


def _schmidt_amplitudes(lam: np.ndarray) -> np.ndarray:
    # lam has shape (N, 5), psi = 0
    amps = np.zeros((lam.shape[0], 8))
    amps[:, list(SCHMIDT_INDICES)] = lam
    return amps


def fig1_table(resolution: int = DEFAULT_RESOLUTION["fig1"]) -> np.ndarray:
    """Rows (alpha, beta, q_ab, q_ac, q_bc) on an alpha x beta grid over [0, pi] x [0, 2 pi].

    lambda1 = 0, lambda0 = cos(alpha), lambda2 = sin(alpha) cos(beta),
    lambda3 = sin(alpha) sin(beta). Rows run over beta fastest.
    """
    alpha = np.linspace(0.0, math.pi, resolution)
    beta = np.linspace(0.0, 2 * math.pi, resolution)
    aa, bb = (g.reshape(-1) for g in np.meshgrid(alpha, beta, indexing="ij"))
    zeros = np.zeros_like(aa)
    lam = np.stack([np.cos(aa), zeros, np.sin(aa) * np.cos(bb), np.sin(aa) * np.sin(bb), zeros], axis=1)
    q = pairwise_values_batch(_schmidt_amplitudes(lam))
    return np.column_stack([aa, bb, q])


def fig2_table(resolution: int = DEFAULT_RESOLUTION["fig2"]) -> np.ndarray:
    """Rows (theta, q_ab, q_ac, q_bc) for theta over [0, 2 pi].

    lambda0 = sqrt2/2, lambda2 = (sqrt2/2) cos(theta), lambda3 = (sqrt2/2) sin(theta).
    """
    theta = np.linspace(0.0, 2 * math.pi, resolution)
    h = math.sqrt(2) / 2
    zeros = np.zeros_like(theta)
    lam = np.stack([np.full_like(theta, h), zeros, h * np.cos(theta), h * np.sin(theta), zeros], axis=1)
    q = pairwise_values_batch(_schmidt_amplitudes(lam))
    return np.column_stack([theta, q])


def scan_table(spec: ScanSpec) -> np.ndarray:
    if spec.figure == "fig1":
        return fig1_table(spec.resolution)
    return fig2_table(spec.resolution)


def format_number(x: float) -> str:
    text = format(float(x), ".12g")
    return "0" if text == "-0" else text


def to_csv(figure: str, table: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADERS[figure])
    for row in table:
        writer.writerow([format_number(x) for x in row])
    return buf.getvalue()


def write_scan(spec: ScanSpec) -> str:
    """Compute the scan and write it to ``spec.out``; returns the CSV text."""
    text = to_csv(spec.figure, scan_table(spec))
    if spec.out is not None:
        Path(spec.out).write_text(text)
    return text
