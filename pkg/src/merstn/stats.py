"""Paired nonparametric testing and bootstrap confidence intervals.

Wilcoxon signed-rank convention used throughout and printed in reports:
W = min(W+, W-), zero differences dropped, midranks for ties. The exact
two-sided p-value enumerates all 2^n sign assignments (as a polynomial
count over doubled ranks) for n <= 25; larger n uses the normal
approximation with tie and continuity corrections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import ConfigError, DegenerateStatisticsError

EXACT_LIMIT = 25


@dataclass(frozen=True)
class WilcoxonResult:
    w: float
    p: float
    n: int  # nonzero differences used
    w_plus: float
    w_minus: float
    exact: bool


def _exact_distribution(double_ranks: np.ndarray) -> np.ndarray:
    """counts[s] = number of sign assignments with doubled W+ equal to s."""
    total = int(double_ranks.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in double_ranks:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.size - r]
        counts = counts + shifted
    return counts


def wilcoxon_signed_rank(reference, alternative, sided: str = "two-sided") -> WilcoxonResult:
    """Paired Wilcoxon signed-rank test on fold-aligned value vectors.

    Differences are alternative - reference; exact zeros are dropped and at
    least five nonzero differences are required.
    """
    if sided != "two-sided":
        raise ConfigError("only the two-sided test is implemented")
    ref = np.asarray(reference, dtype=np.float64)
    alt = np.asarray(alternative, dtype=np.float64)
    if ref.shape != alt.shape:
        raise ConfigError("paired samples must have equal length")
    diffs = alt - ref
    diffs = diffs[diffs != 0.0]
    if diffs.size == 0:
        raise DegenerateStatisticsError("all paired differences are zero")
    if diffs.size < 5:
        raise DegenerateStatisticsError(
            f"only {diffs.size} nonzero differences; need at least 5"
        )

    n = diffs.size
    ranks = rankdata(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    total = n * (n + 1) / 2.0
    w_minus = total - w_plus
    w = min(w_plus, w_minus)

    if n <= EXACT_LIMIT:
        double_ranks = np.rint(2.0 * ranks).astype(np.int64)
        counts = _exact_distribution(double_ranks)
        w2 = int(round(2.0 * w))
        total2 = int(double_ranks.sum())
        low = counts[: w2 + 1].sum()
        high = counts[total2 - w2 :].sum()
        p = float(min(1.0, (low + high) / 2.0**n))
        return WilcoxonResult(w, p, n, w_plus, w_minus, True)

    mean = total / 2.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    tie_term = float(((tie_counts**3 - tie_counts).sum())) / 48.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    if var <= 0:
        raise DegenerateStatisticsError("zero variance in signed-rank statistic")
    z = (w - mean + 0.5) / math.sqrt(var)
    p = min(1.0, 2.0 * 0.5 * math.erfc(-z / math.sqrt(2.0)))
    return WilcoxonResult(w, p, n, w_plus, w_minus, False)


@dataclass(frozen=True)
class HolmResult:
    corrected: np.ndarray
    reject: np.ndarray


def holm_bonferroni(p_values, alpha: float = 0.05) -> HolmResult:
    """Step-down Holm correction; corrected p-values are monotone in the raw
    ordering and clipped at 1. Rejection: corrected p < alpha."""
    p = np.asarray(p_values, dtype=np.float64)
    if p.size == 0:
        return HolmResult(np.empty(0), np.empty(0, dtype=bool))
    if np.any((p < 0) | (p > 1)):
        raise ConfigError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    corrected_sorted = np.empty(m)
    running = 0.0
    for i, idx in enumerate(order):
        running = max(running, (m - i) * p[idx])
        corrected_sorted[i] = min(1.0, running)
    corrected = np.empty(m)
    corrected[order] = corrected_sorted
    return HolmResult(corrected, corrected < alpha)


@dataclass(frozen=True)
class BootstrapCI:
    point: float
    lo: float
    hi: float
    n_redraws: int


def bootstrap_ci(
    values_or_evaluator,
    n_items: int | None = None,
    n_resamples: int = 1000,
    level: float = 0.95,
    seed: int = 0,
    max_redraws: int = 10000,
) -> BootstrapCI:
    """Percentile bootstrap over resampled row indices.

    Given an array, the statistic is the mean of the resampled values.
    Given a callable, it receives an index array into range(n_items) and
    returns the statistic; returning NaN marks the resample as undefined
    (e.g. no positive rows drawn) and it is redrawn, with the redraw count
    reported.
    """
    if callable(values_or_evaluator):
        if n_items is None:
            raise ConfigError("n_items is required with an evaluator")
        evaluator = values_or_evaluator
        size = n_items
    else:
        values = np.asarray(values_or_evaluator, dtype=np.float64)
        size = values.size

        def evaluator(idx):
            return float(values[idx].mean())

    if size < 10:
        raise ConfigError(f"need at least 10 rows to bootstrap, got {size}")
    point = float(evaluator(np.arange(size)))
    if math.isnan(point):
        raise DegenerateStatisticsError("statistic undefined on the full sample")

    rng = np.random.Generator(np.random.Philox(seed))
    stats = np.empty(n_resamples)
    redraws = 0
    for i in range(n_resamples):
        while True:
            idx = rng.integers(0, size, size=size)
            value = float(evaluator(idx))
            if not math.isnan(value):
                stats[i] = value
                break
            redraws += 1
            if redraws > max_redraws:
                raise DegenerateStatisticsError(
                    f"statistic undefined on {redraws} resamples; giving up"
                )
    tail = 100.0 * (1.0 - level) / 2.0
    lo, hi = np.percentile(stats, [tail, 100.0 - tail])
    return BootstrapCI(point, float(lo), float(hi), redraws)
