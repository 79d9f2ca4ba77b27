"""Computation of the 13-descriptor feature vector for one analysis window.

Feature domains:
  R (recurrence):     rr, det, l_avg
  N (nonlinear):      lle, hurst, hfd, kfd, lzc
  E (entropy):        shannon, perm_ent, samp_en, ap_en, tsallis

Expensive quadratic estimators (recurrence metrics, Lyapunov divergence,
sample/approximate entropy) run on a uniform-stride decimation of the
window capped at max_points states; the stride is surfaced in run reports.
Undefined values are imputed with their worst-case bound and recorded in a
bitmask so no window is ever dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..errors import ConfigError
from .embedding import EmbeddingParams, autocorr_delay, decimate_uniform, delay_embed
from .entropy import (
    _apen_from_close,
    _close_matrix,
    _sampen_counts,
    permutation_entropy,
    shannon_entropy,
    tsallis_entropy,
)
from .nonlinear import _lle_from_embedding, higuchi_fd, hurst_rs, katz_fd, lz_complexity
from .rqa import diagonal_line_lengths

FEATURE_NAMES = (
    "rr",
    "det",
    "l_avg",
    "lle",
    "hurst",
    "hfd",
    "kfd",
    "lzc",
    "shannon",
    "perm_ent",
    "samp_en",
    "ap_en",
    "tsallis",
)

DOMAINS = {
    "R": ("rr", "det", "l_avg"),
    "N": ("lle", "hurst", "hfd", "kfd", "lzc"),
    "E": ("shannon", "perm_ent", "samp_en", "ap_en", "tsallis"),
}


@dataclass(frozen=True)
class FeatureConfig:
    embedding_m: int = 3
    embedding_tau: int | None = None  # None: first autocorrelation zero crossing
    epsilon_factor: float = 0.1
    l_min: int = 2
    max_points: int = 2000
    lle_max_steps: int = 20
    sampen_m: int = 2
    sampen_r: float = 0.2
    perm_order: int = 3
    perm_delay: int = 1
    higuchi_k_max: int = 64
    bins: int = 16
    tsallis_q: float = 2.0

    def __post_init__(self) -> None:
        try:
            self.embedding_params()
        except ValueError as exc:
            raise ConfigError(str(exc))
        if self.sampen_m < 1 or self.sampen_r <= 0:
            raise ConfigError("sample-entropy parameters out of range")
        if self.bins < 2 or self.tsallis_q == 1.0:
            raise ConfigError("histogram bins must be >= 2 and tsallis_q != 1")

    def embedding_params(self) -> EmbeddingParams:
        return EmbeddingParams(
            m=self.embedding_m,
            tau=self.embedding_tau,
            epsilon_factor=self.epsilon_factor,
            l_min=self.l_min,
            max_points=self.max_points,
        )


@dataclass(frozen=True)
class FeatureVector:
    rr: float
    det: float
    l_avg: float
    lle: float
    hurst: float
    hfd: float
    kfd: float
    lzc: float
    shannon: float
    perm_ent: float
    samp_en: float
    ap_en: float
    tsallis: float
    undefined_mask: int = 0

    def values(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES])

    def undefined_names(self) -> tuple[str, ...]:
        return tuple(
            name for i, name in enumerate(FEATURE_NAMES) if self.undefined_mask >> i & 1
        )


def _flag(mask: int, name: str) -> int:
    return mask | (1 << FEATURE_NAMES.index(name))


def extract_features(window: np.ndarray, config: FeatureConfig | None = None) -> FeatureVector:
    """Compute all 13 descriptors of one preprocessed window.

    Deterministic for a given (window, config). Hard precondition failures
    (window too short for an estimator) propagate; soft degeneracies are
    imputed and flagged: l_avg <- 0 when no diagonal line reaches l_min,
    kfd <- 1 for degenerate geometry, samp_en <- its no-match upper bound.
    """
    config = config or FeatureConfig()
    x = np.asarray(window, dtype=np.float64)
    mask = 0

    # Shared phase-space construction for the recurrence and Lyapunov metrics.
    decimated, stride = decimate_uniform(x, config.max_points)
    tau = (
        config.embedding_tau
        if config.embedding_tau is not None
        else autocorr_delay(decimated)
    )
    points = delay_embed(decimated, config.embedding_m, tau)
    dist = squareform(pdist(points))
    epsilon = config.epsilon_factor * float(dist.max())
    recur = dist <= epsilon

    n = recur.shape[0]
    total = int(recur.sum())
    rr = total / (n * n)
    hist = diagonal_line_lengths(recur)
    lengths = np.arange(hist.size)
    eligible = lengths >= config.l_min
    det_points = int((lengths[eligible] * hist[eligible]).sum())
    n_lines = int(hist[eligible].sum())
    det = det_points / total if total else 0.0
    if n_lines > 0:
        l_avg = det_points / n_lines
    else:
        l_avg = 0.0
        mask = _flag(mask, "l_avg")

    lle, _, _ = _lle_from_embedding(
        points, dist, tau, config.embedding_m, config.lle_max_steps
    )

    hurst = hurst_rs(x)
    hfd = higuchi_fd(x, config.higuchi_k_max)
    katz = katz_fd(x)
    if katz.defined:
        kfd = katz.kfd
    else:
        kfd = 1.0
        mask = _flag(mask, "kfd")
    lzc = lz_complexity(x)

    shannon = shannon_entropy(x, config.bins)
    perm = permutation_entropy(x, config.perm_order, config.perm_delay)
    tsallis = tsallis_entropy(x, config.tsallis_q, config.bins)

    close = _close_matrix(decimated, config.sampen_r * float(decimated.std()))
    b, a = _sampen_counts(close, config.sampen_m)
    if a > 0 and b > 0:
        samp_en = -math.log(a / b) + 0.0
    else:
        # No matches at m+1 (or even at m): impute the largest value the
        # counting could have produced.
        if b > 0:
            samp_en = math.log(b)
        else:
            t = decimated.size - config.sampen_m
            samp_en = math.log(t * (t - 1) / 2.0)
        mask = _flag(mask, "samp_en")
    ap_en = _apen_from_close(close, config.sampen_m)

    return FeatureVector(
        rr=rr,
        det=det,
        l_avg=l_avg,
        lle=lle,
        hurst=hurst,
        hfd=hfd,
        kfd=kfd,
        lzc=lzc,
        shannon=shannon,
        perm_ent=perm,
        samp_en=samp_en,
        ap_en=ap_en,
        tsallis=tsallis,
        undefined_mask=mask,
    )
