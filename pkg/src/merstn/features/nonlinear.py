"""Chaos, memory and roughness descriptors: largest Lyapunov exponent
(Rosenstein), rescaled-range Hurst exponent, Higuchi and Katz fractal
dimensions, and Lempel-Ziv complexity of the median-binarized sequence."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.spatial.distance import pdist, squareform

from .embedding import EmbeddingParams, autocorr_delay, decimate_uniform, delay_embed


@dataclass(frozen=True)
class LleResult:
    """Slope of the mean log-divergence curve, in nats per (decimated) sample."""

    lle: float
    nats_per_s: float
    fit_steps: tuple[int, int]
    n_pairs: int
    stride: int


def _lle_from_embedding(
    points: np.ndarray,
    dist: np.ndarray,
    tau: int,
    m: int,
    max_steps: int,
    sat_margin: float = 1.0,
) -> tuple[float, tuple[int, int], int]:
    n = points.shape[0]
    theiler = tau * m
    usable = n - max_steps
    if usable <= theiler + 1:
        raise ValueError("not enough embedded points to track divergence")

    work = dist[:usable, :usable].copy()
    idx = np.arange(usable)
    for shift in range(-theiler, theiler + 1):
        j = idx + shift
        valid = (j >= 0) & (j < usable)
        work[idx[valid], j[valid]] = np.inf
    neighbors = np.argmin(work, axis=1)
    finite = np.isfinite(work[idx, neighbors])
    if not finite.any():
        raise ValueError("no valid nearest-neighbor pairs outside the Theiler window")
    base = idx[finite]
    nn = neighbors[finite]

    curve = np.empty(max_steps)
    for t in range(1, max_steps + 1):
        d = np.linalg.norm(points[base + t] - points[nn + t], axis=1)
        d = d[d > 0]
        curve[t - 1] = np.log(d).mean() if d.size else -np.inf

    # Fit only the initial growth region: stop where the curve comes within
    # sat_margin nats of the attractor scale (mean pairwise distance), since
    # divergence saturates there. At least 3 steps are always used.
    scale = float(dist[np.triu_indices_from(dist, k=1)].mean())
    sat_level = math.log(scale) - sat_margin if scale > 0 else np.inf
    fit_end = max_steps
    for t in range(max_steps):
        if curve[t] >= sat_level:
            fit_end = t + 1
            break
    fit_end = int(np.clip(fit_end, 3, max_steps))
    steps = np.arange(1, fit_end + 1)
    values = curve[:fit_end]
    good = np.isfinite(values)
    if good.sum() < 2:
        raise ValueError("divergence curve degenerate (repeated identical states)")
    slope = np.polyfit(steps[good], values[good], 1)[0]
    return float(slope), (1, fit_end), int(base.size)


def lle_rosenstein(
    segment: np.ndarray,
    params: EmbeddingParams,
    max_steps: int = 20,
    fs: float = 1.0,
) -> LleResult:
    """Largest Lyapunov exponent via nearest-neighbor divergence tracking.

    For every embedded state the nearest neighbor outside a Theiler window
    of tau*m samples is followed for max_steps; the exponent is the
    least-squares slope of <ln d(t)> over the pre-saturation steps.
    """
    x, stride = decimate_uniform(segment, params.max_points)
    tau = params.tau if params.tau is not None else autocorr_delay(x, params.tau_cap)
    points = delay_embed(x, params.m, tau)
    if points.shape[0] < 500:
        raise ValueError(
            f"need at least 500 embedded points, got {points.shape[0]}"
        )
    dist = squareform(pdist(points))
    slope, fit, pairs = _lle_from_embedding(points, dist, tau, params.m, max_steps)
    fs_effective = fs / stride
    return LleResult(slope, slope * fs_effective, fit, pairs, stride)


def hurst_rs(segment: np.ndarray, min_block: int = 32) -> float:
    """Hurst exponent from rescaled-range scaling over dyadic block sizes.

    For each block size n the series is split into floor(N/n) blocks; each
    block is demeaned, cumulated, and scored R/S = (max - min of the
    cumulative sum) / stddev. H is the slope of log mean(R/S) against log n.
    """
    x = np.asarray(segment, dtype=np.float64)
    if x.size < 512:
        raise ValueError(f"need at least 512 samples, got {x.size}")
    max_block = x.size // 4
    sizes = []
    n = min_block
    while n <= max_block:
        sizes.append(n)
        n *= 2
    log_n, log_rs = [], []
    for size in sizes:
        blocks = x[: (x.size // size) * size].reshape(-1, size)
        mean = blocks.mean(axis=1, keepdims=True)
        z = np.cumsum(blocks - mean, axis=1)
        r = z.max(axis=1) - z.min(axis=1)
        s = blocks.std(axis=1)
        valid = s > 0
        if not valid.any():
            continue
        log_n.append(math.log(size))
        log_rs.append(math.log((r[valid] / s[valid]).mean()))
    if len(log_n) < 2:
        raise ValueError("rescaled range undefined: zero within-block variance")
    return float(np.polyfit(log_n, log_rs, 1)[0])


def higuchi_fd(segment: np.ndarray, k_max: int = 64) -> float:
    """Higuchi fractal dimension: negative slope of log L(k) vs log k,
    with curve lengths averaged over all k offsets."""
    x = np.asarray(segment, dtype=np.float64)
    n = x.size
    if n < 10 * k_max:
        raise ValueError(f"need at least {10 * k_max} samples for k_max={k_max}, got {n}")
    log_k, log_l = [], []
    for k in range(1, k_max + 1):
        diffs = np.abs(x[k:] - x[:-k])
        offsets = np.arange(diffs.size) % k
        sums = np.bincount(offsets, weights=diffs, minlength=k)
        segs = (n - 1 - np.arange(k)) // k  # segments per offset
        usable = segs >= 1
        if not usable.any():
            continue
        lengths = sums[usable] * (n - 1) / (segs[usable] * k * k)
        mean_l = lengths.mean()
        if mean_l <= 0:
            continue
        log_k.append(math.log(k))
        log_l.append(math.log(mean_l))
    if len(log_k) < 2:
        raise ValueError("curve length degenerate (constant signal?)")
    return float(-np.polyfit(log_k, log_l, 1)[0])


@dataclass(frozen=True)
class KatzResult:
    kfd: float
    defined: bool


def katz_fd(segment: np.ndarray) -> KatzResult:
    """Katz fractal dimension of the waveform.

    L is the total curve length (summed absolute successive differences),
    d the maximum amplitude excursion from the first sample, n the number
    of steps: D = log(n) / (log(n) + log(d/L)). Degenerate geometry
    (constant signal, d = L = 0) is flagged undefined.
    """
    x = np.asarray(segment, dtype=np.float64)
    if x.size < 3:
        raise ValueError(f"need at least 3 samples, got {x.size}")
    total = float(np.abs(np.diff(x)).sum())
    d = float(np.abs(x - x[0]).max())
    if d == 0.0 or total == 0.0:
        return KatzResult(math.nan, False)
    n = x.size - 1
    return KatzResult(math.log(n) / (math.log(n) + math.log(d / total)), True)


@njit(cache=True)
def _lz76_phrases(s: np.ndarray) -> int:
    """LZ76 phrase count via an online suffix automaton.

    Each phrase is the longest prefix of the remaining sequence that occurs
    starting strictly before the phrase (overlap allowed), plus one
    innovation symbol. The automaton is always built exactly one symbol
    behind the match query, which enforces the strictly-earlier-start rule.
    """
    n = s.size
    if n == 0:
        return 0
    cap = 2 * n + 5
    next0 = np.full(cap, -1, dtype=np.int32)
    next1 = np.full(cap, -1, dtype=np.int32)
    link = np.full(cap, -1, dtype=np.int32)
    length = np.zeros(cap, dtype=np.int32)
    size = 1  # root = 0
    last = 0

    built = 0
    phrases = 0
    l = 0
    while l < n:
        state = 0
        k = 0  # matched symbols of the current phrase
        while l + k < n:
            while built < l + k:
                # suffix-automaton extension by s[built]
                c = s[built]
                cur = size
                size += 1
                length[cur] = length[last] + 1
                link[cur] = -1
                p = last
                if c == 0:
                    while p != -1 and next0[p] == -1:
                        next0[p] = cur
                        p = link[p]
                else:
                    while p != -1 and next1[p] == -1:
                        next1[p] = cur
                        p = link[p]
                if p == -1:
                    link[cur] = 0
                else:
                    q = next0[p] if c == 0 else next1[p]
                    if length[p] + 1 == length[q]:
                        link[cur] = q
                    else:
                        clone = size
                        size += 1
                        length[clone] = length[p] + 1
                        next0[clone] = next0[q]
                        next1[clone] = next1[q]
                        link[clone] = link[q]
                        if c == 0:
                            while p != -1 and next0[p] == q:
                                next0[p] = clone
                                p = link[p]
                        else:
                            while p != -1 and next1[p] == q:
                                next1[p] = clone
                                p = link[p]
                        link[q] = clone
                        link[cur] = clone
                last = cur
                built += 1
                # clones may have taken over the matched prefix: keep the
                # pointer on the state whose length range contains k
                while link[state] != -1 and length[link[state]] >= k:
                    state = link[state]
            nxt = next0[state] if s[l + k] == 0 else next1[state]
            if nxt == -1:
                break
            state = nxt
            k += 1
        if l + k < n:
            phrases += 1
            l += k + 1  # matched run plus one innovation symbol
        else:
            phrases += 1  # tail phrase, fully reproducible or mid-match
            break
    return phrases


def lz76_phrase_count(bits: np.ndarray) -> int:
    """LZ76 phrase count of a binary sequence."""
    bits = np.ascontiguousarray(np.asarray(bits).astype(np.uint8))
    if np.any(bits > 1):
        raise ValueError("sequence must be binary")
    return int(_lz76_phrases(bits))


def lz_complexity(segment: np.ndarray) -> float:
    """Normalized Lempel-Ziv complexity c(n) / (n / log2 n) of the
    median-binarized segment (1 where the sample exceeds the median)."""
    x = np.asarray(segment, dtype=np.float64)
    if x.size < 64:
        raise ValueError(f"need at least 64 samples, got {x.size}")
    bits = (x > np.median(x)).astype(np.uint8)
    c = lz76_phrase_count(bits)
    n = x.size
    return c * math.log2(n) / n
