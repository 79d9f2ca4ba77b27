import numpy as np
from merstn.preprocess import (
    PreprocessConfig, bandpass_zero_phase, hilbert_envelope,
    estimate_noise_sigma, detect_and_repair, pchip_interpolate,
)

cfg = PreprocessConfig()
fs = 20000.0
rng = np.random.Generator(np.random.Philox(1))

# 1 kHz passband
t = np.arange(int(fs)) / fs
x = np.sin(2 * np.pi * 1000 * t)
y = bandpass_zero_phase(x, fs, cfg)
core = slice(2000, -2000)
amp = np.max(np.abs(y[core]))
print("1kHz amp:", amp)

# zero lag
from numpy import correlate
c = np.correlate(y[core], x[core], mode="full")
lag = np.argmax(c) - (len(x[core]) - 1)
print("lag:", lag)

# DC
dc = bandpass_zero_phase(np.full(20000, 5.0), fs, cfg)
print("DC max after edge discard:", np.max(np.abs(dc[2000:-2000])))

# 300 Hz edge, 5000 Hz edge
for f in (300.0, 5000.0):
    xs = np.sin(2 * np.pi * f * t)
    ys = bandpass_zero_phase(xs, fs, cfg)
    print(f, "edge amp:", np.max(np.abs(ys[4000:-4000])))

# hilbert envelope of 3 sin
e = hilbert_envelope(3 * np.sin(2 * np.pi * 1000 * t))
edge = int(0.005 * fs)
print("env err:", np.max(np.abs(e[edge:-edge] - 3)) / 3)

# noise sigma: unit gaussian
w = rng.standard_normal(200000)
env = hilbert_envelope(w)
print("sigma(unit wgn):", estimate_noise_sigma(env))

# sigma = 2 + 1% duty spikes
w2 = 2 * rng.standard_normal(200000)
spikes = rng.choice(200000, size=2000, replace=False)
w2s = w2.copy()
w2s[spikes] += 50 * 2 * np.sign(rng.standard_normal(2000))
print("sigma(2 + spikes):", estimate_noise_sigma(hilbert_envelope(w2s)))

# constant envelope degenerate
print("const env:", estimate_noise_sigma(np.full(2000, 3.0)), "expect", 3.0 / np.sqrt(np.pi / 2))

# detect_and_repair on clean band-passed noise, 10 s
clean = bandpass_zero_phase(rng.standard_normal(int(10 * fs)), fs, cfg)
res = detect_and_repair(clean, fs, cfg)
print("clean flagged fraction:", res.artifact_fraction)

# 20 sigma burst of 10 ms
sig = bandpass_zero_phase(rng.standard_normal(int(10 * fs)), fs, cfg)
s0 = sig.std()
burst = slice(100000, 100000 + 200)
sig2 = sig.copy()
sig2[burst] += 20 * s0
res2 = detect_and_repair(sig2, fs, cfg)
print("burst fully flagged:", res2.mask[burst].all(),
      "repaired max in burst:", np.max(np.abs(res2.repaired[burst])) / res2.sigma)

# second pass idempotence
res3 = detect_and_repair(res.repaired, fs, cfg)
new = res3.mask & ~res.mask
print("second pass new flags:", new.mean())

# zero signal
rz = detect_and_repair(np.zeros(5000), fs, cfg)
print("zero: mask any:", rz.mask.any(), "identity:", np.array_equal(rz.repaired, np.zeros(5000)))

# pchip checks
kx = np.array([0.0, 1, 2, 3, 4])
ky = 2 * kx + 1
q = np.array([0.5, 1.5, 2.5, 3.5])
print("pchip linear err:", np.max(np.abs(pchip_interpolate(kx, ky, q) - (2 * q + 1))))
ky2 = np.array([0.0, 0.1, 0.2, 5.0, 5.1])
qq = np.linspace(0, 4, 101)
v = pchip_interpolate(kx, ky2, qq)
print("monotone:", np.all(np.diff(v) >= -1e-12), "range ok:", v.min() >= -1e-12 and v.max() <= 5.1 + 1e-12)
