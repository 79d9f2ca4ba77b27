"""Recurrence quantification: recurrence rate, determinism and mean diagonal
line length from a thresholded pairwise-distance matrix of embedded states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.spatial.distance import pdist, squareform

from .embedding import EmbeddingParams, autocorr_delay, decimate_uniform, delay_embed


@dataclass(frozen=True)
class RqaResult:
    rr: float
    det: float
    l_avg: float
    l_avg_defined: bool
    epsilon: float
    tau: int
    stride: int
    n_points: int


def recurrence_matrix(points: np.ndarray, epsilon: float) -> np.ndarray:
    """Boolean matrix R[i, j] = (Euclidean distance between states <= epsilon)."""
    dist = squareform(pdist(np.asarray(points, dtype=np.float64)))
    return dist <= epsilon


@njit(cache=True)
def _upper_diagonal_runs(recur: np.ndarray) -> np.ndarray:
    n = recur.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    for offset in range(1, n):
        run = 0
        for i in range(n - offset):
            if recur[i, i + offset]:
                run += 1
            elif run:
                hist[run] += 1
                run = 0
        if run:
            hist[run] += 1
    return hist


def diagonal_line_lengths(recur: np.ndarray) -> np.ndarray:
    """Histogram of diagonal line lengths, main diagonal excluded.

    Index l holds the number of maximal diagonal runs of exactly length l;
    both triangles are counted (the matrix is symmetric, so the upper
    triangle is scanned and doubled).
    """
    return _upper_diagonal_runs(np.ascontiguousarray(recur)) * 2


def rqa_metrics(segment: np.ndarray, params: EmbeddingParams) -> RqaResult:
    """RR, DET and L of a segment after decimation to at most max_points states.

    RR is the recurrence fraction over the full N x N matrix (Heaviside with
    theta(0) = 1). DET divides the recurrence points lying on off-diagonal
    lines of length >= l_min by all recurrence points; L is the mean length
    of those lines. When no line reaches l_min, DET is 0 and l_avg is
    flagged undefined.
    """
    x, stride = decimate_uniform(segment, params.max_points)
    tau = params.tau if params.tau is not None else autocorr_delay(x, params.tau_cap)
    points = delay_embed(x, params.m, tau)
    dist = squareform(pdist(points))
    if params.epsilon is not None:
        epsilon = params.epsilon
    else:
        epsilon = params.epsilon_factor * float(dist.max())
    recur = dist <= epsilon

    total = int(recur.sum())
    n = recur.shape[0]
    rr = total / (n * n)

    hist = diagonal_line_lengths(recur)
    lengths = np.arange(hist.size)
    eligible = lengths >= params.l_min
    det_points = int((lengths[eligible] * hist[eligible]).sum())
    n_lines = int(hist[eligible].sum())

    det = det_points / total if total else 0.0
    if n_lines > 0:
        l_avg = det_points / n_lines
        defined = True
    else:
        l_avg = math.nan
        defined = False
    return RqaResult(rr, det, l_avg, defined, epsilon, tau, stride, n)
