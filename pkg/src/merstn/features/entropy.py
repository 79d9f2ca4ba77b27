"""Entropy estimators: Shannon and Tsallis over amplitude histograms,
ordinal-pattern (permutation) entropy, and the template-matching pair
sample/approximate entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _amplitude_probabilities(segment: np.ndarray, bins: int) -> np.ndarray:
    x = np.asarray(segment, dtype=np.float64)
    if bins < 2:
        raise ValueError(f"need at least 2 bins, got {bins}")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return np.array([1.0])
    counts, _ = np.histogram(x, bins=bins, range=(lo, hi))
    return counts[counts > 0] / x.size


def shannon_entropy(segment: np.ndarray, bins: int = 16) -> float:
    """Shannon entropy (bits) of the amplitude histogram over [min, max]."""
    p = _amplitude_probabilities(segment, bins)
    return float(-(p * np.log2(p)).sum())


def tsallis_entropy(segment: np.ndarray, q: float = 2.0, bins: int = 16) -> float:
    """Tsallis entropy S_q = (1 - sum p_i^q) / (q - 1) over the same
    amplitude histogram as shannon_entropy."""
    if q == 1.0:
        raise ValueError("q = 1 is the Shannon limit; use shannon_entropy")
    p = _amplitude_probabilities(segment, bins)
    return float((1.0 - (p**q).sum()) / (q - 1.0))


def permutation_entropy(segment: np.ndarray, order: int = 3, delay: int = 1) -> float:
    """Entropy (bits) of the ordinal-pattern distribution.

    Patterns are the argsort permutations of (x_i, x_{i+d}, ...,
    x_{i+(order-1)d}); ties resolve by original index order (stable sort).
    """
    x = np.asarray(segment, dtype=np.float64)
    if order < 2 or delay < 1:
        raise ValueError(f"need order >= 2 and delay >= 1, got ({order}, {delay})")
    if x.size < math.factorial(order) * 10:
        raise ValueError(
            f"need at least {math.factorial(order) * 10} samples for order {order}"
        )
    n_patterns = x.size - (order - 1) * delay
    windows = np.column_stack(
        [x[k * delay : k * delay + n_patterns] for k in range(order)]
    )
    perms = np.argsort(windows, axis=1, kind="stable")
    codes = (perms * (order ** np.arange(order))).sum(axis=1)
    _, counts = np.unique(codes, return_counts=True)
    p = counts / n_patterns
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True)
class SampEnResult:
    value: float
    defined: bool
    matches_m: int
    matches_m1: int


def _close_matrix(x: np.ndarray, r_abs: float) -> np.ndarray:
    return np.abs(x[:, None] - x[None, :]) <= r_abs


def _template_match_counts(close: np.ndarray, m: int, n_templates: int) -> np.ndarray:
    """Boolean template-match matrix for length-m templates starting at
    0..n_templates-1, built by ANDing lag-shifted closeness matrices."""
    match = close[:n_templates, :n_templates].copy()
    for k in range(1, m):
        match &= close[k : k + n_templates, k : k + n_templates]
    return match


def _sampen_counts(close: np.ndarray, m: int) -> tuple[int, int]:
    """(B, A): template pairs matching at lengths m and m+1, self-matches excluded."""
    n_templates = close.shape[0] - m
    match_m = _template_match_counts(close, m, n_templates)
    match_m1 = match_m & close[m : m + n_templates, m : m + n_templates]
    upper = np.triu_indices(n_templates, k=1)
    return int(match_m[upper].sum()), int(match_m1[upper].sum())


def _apen_from_close(close: np.ndarray, m: int) -> float:
    def phi(length: int) -> float:
        n_templates = close.shape[0] - length + 1
        match = _template_match_counts(close, length, n_templates)
        c = match.sum(axis=1) / n_templates
        return float(np.log(c).mean())

    return phi(m) - phi(m + 1)


def sample_entropy(segment: np.ndarray, m: int = 2, r: float = 0.2) -> SampEnResult:
    """Sample entropy -ln(A/B) with Chebyshev tolerance r * stddev.

    B counts template pairs (self-matches excluded) matching at length m,
    A the same pairs still matching at length m + 1. A or B of zero makes
    the value undefined (flagged); callers impute.
    """
    x = np.asarray(segment, dtype=np.float64)
    if x.size < 200:
        raise ValueError(f"need at least 200 samples, got {x.size}")
    close = _close_matrix(x, r * float(x.std()))
    b, a = _sampen_counts(close, m)
    if a == 0 or b == 0:
        return SampEnResult(math.nan, False, b, a)
    return SampEnResult(-math.log(a / b) + 0.0, True, b, a)


def approximate_entropy(segment: np.ndarray, m: int = 2, r: float = 0.2) -> float:
    """Approximate entropy Phi^m(r) - Phi^{m+1}(r), self-matches included,
    with Chebyshev tolerance r * stddev."""
    x = np.asarray(segment, dtype=np.float64)
    if x.size < 200:
        raise ValueError(f"need at least 200 samples, got {x.size}")
    close = _close_matrix(x, r * float(x.std()))
    return _apen_from_close(close, m)
