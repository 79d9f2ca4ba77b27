"""Deterministic signal generators: oracle inputs for the feature tests and
a labeled two-class surrogate corpus standing in for the (private) clinical
recordings.

All generators are pure functions of (parameters, seed); randomness comes
from numpy's Philox counter-based generator so identical seeds give
identical output regardless of platform or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .edf import Label, Recording
from .errors import ConfigError, DataError

PRNG_NAME = "philox4x64"

# Class-default surrogate contrast, mimicking the acquisition hallmarks:
# inside the target nucleus firing is faster, larger and bursty.
INSIDE_DEFAULTS = dict(firing_rate_hz=60.0, spike_amplitude_sigma=6.0, burst_fraction=0.4)
OUTSIDE_DEFAULTS = dict(firing_rate_hz=15.0, spike_amplitude_sigma=3.0, burst_fraction=0.0)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class SurrogateSpec:
    class_label: Label
    firing_rate_hz: float
    spike_amplitude_sigma: float
    burst_fraction: float
    background: str = "white"  # white | pink
    duration_s: float = 8.0
    fs: float = 20000.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.firing_rate_hz < 0:
            raise ConfigError("firing_rate_hz must be >= 0")
        if not 0.0 <= self.burst_fraction <= 1.0:
            raise ConfigError("burst_fraction must be in [0, 1]")
        if self.background not in ("white", "pink"):
            raise ConfigError(f"unknown background {self.background!r}")
        if self.duration_s < 2.0:
            raise ConfigError("duration_s must cover at least one analysis window (2 s)")
        if self.fs <= 0:
            raise ConfigError("fs must be positive")

    @classmethod
    def for_class(cls, label: Label, seed: int, **overrides) -> "SurrogateSpec":
        base = dict(INSIDE_DEFAULTS if label is Label.INSIDE else OUTSIDE_DEFAULTS)
        base.update(overrides)
        return cls(class_label=label, seed=seed, **base)


def gen_test_signal(kind: str, params: dict, seed: int = 0) -> np.ndarray:
    """Deterministic oracle signals: sine, gaussian_noise, ramp, logistic_map,
    random_walk."""
    rng = _rng(seed)
    if kind == "sine":
        fs = params.get("fs", 20000.0)
        duration = params.get("duration_s", 1.0)
        freq = params.get("freq_hz", 1000.0)
        amplitude = params.get("amplitude", 1.0)
        phase = params.get("phase", 0.0)
        t = np.arange(int(round(duration * fs))) / fs
        return amplitude * np.sin(2 * np.pi * freq * t + phase)
    if kind == "gaussian_noise":
        return params.get("sigma", 1.0) * rng.standard_normal(params["n"])
    if kind == "ramp":
        return params.get("slope", 1.0) * np.arange(params["n"], dtype=np.float64) + params.get(
            "intercept", 0.0
        )
    if kind == "logistic_map":
        r = params.get("r", 4.0)
        x = params.get("x0", 0.2)
        n = params["n"]
        out = np.empty(n)
        out[0] = x
        for i in range(n - 1):
            out[i + 1] = r * out[i] * (1.0 - out[i])
        return out
    if kind == "random_walk":
        return np.cumsum(params.get("step_sigma", 1.0) * rng.standard_normal(params["n"]))
    raise ConfigError(f"unknown test-signal kind {kind!r}")


def _pink_noise(n: int, rng: np.random.Generator) -> np.ndarray:
    """1/f-power background: white noise reshaped in the frequency domain
    by a 1/sqrt(f) amplitude profile, normalized to unit variance."""
    white = rng.standard_normal(n)
    spectrum = np.fft.rfft(white)
    freqs = np.fft.rfftfreq(n)
    shaping = np.zeros_like(freqs)
    shaping[1:] = 1.0 / np.sqrt(freqs[1:])
    spectrum *= shaping
    out = np.fft.irfft(spectrum, n)
    std = out.std()
    if std == 0:
        raise DataError("degenerate pink-noise draw")
    return out / std


def _biphasic_template(fs: float, width_ms: float = 1.0) -> np.ndarray:
    """One positive-then-negative lobe pair spanning width_ms, unit peak."""
    n = max(4, int(round(width_ms * 1e-3 * fs)))
    t = np.arange(n) / n
    return np.sin(2 * np.pi * t)


@dataclass(frozen=True)
class SurrogateParts:
    signal: np.ndarray
    spike_times: np.ndarray  # sample indices
    n_spikes: int


def surrogate_components(spec: SurrogateSpec) -> SurrogateParts:
    """Background plus spike train, with the spike placement exposed for tests."""
    rng = _rng(spec.seed)
    n = int(round(spec.duration_s * spec.fs))
    if spec.background == "white":
        signal = rng.standard_normal(n)
    else:
        signal = _pink_noise(n, rng)

    n_spikes = int(rng.poisson(spec.firing_rate_hz * spec.duration_s))
    template = _biphasic_template(spec.fs) * spec.spike_amplitude_sigma
    if n_spikes:
        # Burst epochs cover a quarter of the recording; burst_fraction of
        # the spikes land inside them, the rest anywhere.
        n_bursts = max(1, int(round(spec.duration_s)))
        burst_width = 0.25 * spec.duration_s / n_bursts
        burst_starts = rng.uniform(0.0, spec.duration_s - burst_width, size=n_bursts)
        in_burst = rng.uniform(size=n_spikes) < spec.burst_fraction
        times_s = np.where(
            in_burst,
            burst_starts[rng.integers(0, n_bursts, size=n_spikes)]
            + rng.uniform(0.0, burst_width, size=n_spikes),
            rng.uniform(0.0, spec.duration_s, size=n_spikes),
        )
        positions = np.minimum((times_s * spec.fs).astype(np.int64), n - 1)
        positions.sort()
        for pos in positions:
            end = min(n, pos + template.size)
            signal[pos:end] += template[: end - pos]
    else:
        positions = np.empty(0, dtype=np.int64)
    return SurrogateParts(signal=signal, spike_times=positions, n_spikes=n_spikes)


def gen_surrogate_mer(spec: SurrogateSpec, **recording_ids) -> Recording:
    """Surrogate microelectrode recording: unit-sigma background plus a
    Poisson spike train of 1 ms biphasic events at the configured rate and
    amplitude."""
    parts = surrogate_components(spec)
    return Recording(
        samples=parts.signal,
        fs=spec.fs,
        label=spec.class_label,
        **recording_ids,
    )
