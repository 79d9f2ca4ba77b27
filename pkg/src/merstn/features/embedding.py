"""Time-delay embedding and the shared phase-space parameter bundle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmbeddingParams:
    """Phase-space reconstruction parameters.

    epsilon is the recurrence threshold; when None it is resolved per
    segment as epsilon_factor times the maximum pairwise distance of the
    embedded points. tau=None selects the first zero crossing of the
    autocorrelation (capped) on the decimated segment.
    """

    m: int = 3
    tau: int | None = None
    epsilon: float | None = None
    epsilon_factor: float = 0.1
    l_min: int = 2
    max_points: int = 2000
    tau_cap: int = 50

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"embedding dimension must be >= 1, got {self.m}")
        if self.tau is not None and self.tau < 1:
            raise ValueError(f"delay must be >= 1, got {self.tau}")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be positive when given")
        if self.epsilon_factor <= 0:
            raise ValueError("epsilon_factor must be positive")
        if self.l_min < 2:
            raise ValueError(f"l_min must be >= 2, got {self.l_min}")
        if self.max_points < 100:
            raise ValueError(f"max_points must be >= 100, got {self.max_points}")


def delay_embed(signal: np.ndarray, m: int, tau: int) -> np.ndarray:
    """Embed a scalar series: point i = (x_i, x_{i+tau}, ..., x_{i+(m-1)tau}).

    Returns an (N - (m-1)*tau, m) array; m=1 reproduces the input as a
    column.
    """
    x = np.asarray(signal, dtype=np.float64)
    if m < 1 or tau < 1:
        raise ValueError(f"need m >= 1 and tau >= 1, got m={m}, tau={tau}")
    n_points = x.size - (m - 1) * tau
    if n_points < 1:
        raise ValueError(
            f"signal of length {x.size} too short for m={m}, tau={tau} "
            f"(needs {(m - 1) * tau + 1})"
        )
    return np.column_stack([x[k * tau : k * tau + n_points] for k in range(m)])


def decimate_uniform(signal: np.ndarray, max_len: int) -> tuple[np.ndarray, int]:
    """Uniform-stride decimation to at most max_len samples; returns (data, stride)."""
    x = np.asarray(signal, dtype=np.float64)
    stride = max(1, math.ceil(x.size / max_len))
    return x[::stride], stride


def autocorr_delay(signal: np.ndarray, cap: int = 50) -> int:
    """First zero crossing of the autocorrelation, capped; minimum 1."""
    x = np.asarray(signal, dtype=np.float64)
    x = x - x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return 1
    cap = min(cap, x.size - 1)
    for lag in range(1, cap + 1):
        if np.dot(x[:-lag], x[lag:]) / denom <= 0.0:
            return lag
    return max(cap, 1)
