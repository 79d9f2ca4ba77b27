import time
import numpy as np
from scipy.spatial.distance import pdist, squareform
from merstn.features.embedding import delay_embed
from merstn.features.rqa import diagonal_line_lengths
from merstn.features.nonlinear import _lz76_phrases, _lle_from_embedding, higuchi_fd

print("=== epsilon factor scan (uniform noise, m=3, tau=1) ===")
for factor in (0.08, 0.10, 0.12, 0.15, 0.20):
    rrs, dets = [], []
    for i in range(30):
        x = np.random.Generator(np.random.Philox(1000 + i)).uniform(size=700)
        pts = delay_embed(x, 3, 1)
        d = squareform(pdist(pts))
        eps = factor * d.max()
        R = d <= eps
        total = R.sum()
        rr = total / R.shape[0] ** 2
        hist = diagonal_line_lengths(R)
        ln = np.arange(hist.size)
        detp = (ln[ln >= 2] * hist[ln >= 2]).sum()
        rrs.append(rr); dets.append(detp / total)
    print(f"factor={factor}: RR [{min(rrs):.4f}, {max(rrs):.4f}]  DET [{min(dets):.3f}, {max(dets):.3f}]")

print("=== gaussian noise too ===")
for factor in (0.10, 0.12, 0.15):
    rrs, dets = [], []
    for i in range(30):
        x = np.random.Generator(np.random.Philox(3000 + i)).standard_normal(700)
        pts = delay_embed(x, 3, 1)
        d = squareform(pdist(pts))
        R = d <= factor * d.max()
        total = R.sum()
        hist = diagonal_line_lengths(R)
        ln = np.arange(hist.size)
        detp = (ln[ln >= 2] * hist[ln >= 2]).sum()
        rrs.append(total / R.shape[0] ** 2); dets.append(detp / total)
    print(f"factor={factor}: RR [{min(rrs):.4f}, {max(rrs):.4f}]  DET [{min(dets):.3f}, {max(dets):.3f}]")

print("=== sine with chosen factors ===")
for factor in (0.10, 0.12):
    n = 2000
    sine = np.sin(2 * np.pi * 20 * np.arange(n) / n)
    from merstn.features.embedding import autocorr_delay
    tau = autocorr_delay(sine)
    pts = delay_embed(sine, 3, tau)
    d = squareform(pdist(pts))
    R = d <= factor * d.max()
    total = R.sum()
    hist = diagonal_line_lengths(R)
    ln = np.arange(hist.size)
    detp = (ln[ln >= 2] * hist[ln >= 2]).sum()
    nl = hist[ln >= 2].sum()
    print(f"factor={factor}: sine DET={detp/total:.4f} l_avg={detp/nl:.1f} RR={total/R.shape[0]**2:.4f}")

print("=== LLE margin robustness (logistic r=4) ===")
def logistic(r, x0, n):
    out = np.empty(n); out[0] = x0
    for i in range(n - 1):
        out[i + 1] = r * out[i] * (1 - out[i])
    return out
for margin in (0.8, 1.0, 1.2):
    vals = []
    for x0 in (0.2, 0.37, 0.55, 0.71, 0.83):
        for n in (1500, 2000, 3000):
            lm = logistic(4.0, x0, n)
            pts = delay_embed(lm, 2, 1)
            dd = squareform(pdist(pts))
            s, fit, _ = _lle_from_embedding(pts, dd, 1, 2, 20, sat_margin=margin)
            vals.append(s)
    print(f"margin={margin}: [{min(vals):.4f}, {max(vals):.4f}] (target 0.693+-0.07)")

# sine + period-2 with margin 1.0
sine2 = np.sin(2 * np.pi * 20 * np.arange(2000) / 2000)
from merstn.features.embedding import autocorr_delay
tau = autocorr_delay(sine2)
pts = delay_embed(sine2, 3, tau)
dd = squareform(pdist(pts))
s, fit, _ = _lle_from_embedding(pts, dd, tau, 3, 20, sat_margin=1.0)
print("sine margin=1.0:", s, fit)
lm2 = logistic(3.2, 0.2, 2000)
pts = delay_embed(lm2, 2, 1)
dd = squareform(pdist(pts))
s, fit, _ = _lle_from_embedding(pts, dd, 1, 2, 20, sat_margin=1.0)
print("logistic r=3.2 margin=1.0:", s)
# also gaussian noise windows for sanity
for i in range(3):
    w = np.random.Generator(np.random.Philox(50 + i)).standard_normal(2000)
    pts = delay_embed(w, 3, 1)
    dd = squareform(pdist(pts))
    s, fit, _ = _lle_from_embedding(pts, dd, 1, 3, 20, sat_margin=1.0)
    print("wgn lle:", s, fit)

print("=== higuchi sine rates ===")
for spc in (50, 100, 200, 400):
    n = 40000
    sine = np.sin(2 * np.pi * np.arange(n) / spc)
    print(f"samples/cycle={spc}: HFD={higuchi_fd(sine):.4f}")

print("=== katz amplitude-only ===")
def katz_amp(x):
    L = np.abs(np.diff(x)).sum()
    d = np.abs(x - x[0]).max()
    n = x.size - 1
    if d == 0 or L == 0:
        return None
    return np.log(n) / (np.log(n) + np.log(d / L))
line = 2.0 * np.arange(100) + 1.0
print("line 2x+1:", katz_amp(line), "exact:", katz_amp(line) == 1.0)
print("const:", katz_amp(np.ones(100)))
kv = [katz_amp(np.random.Generator(np.random.Philox(i)).standard_normal(40000)) for i in range(10)]
print("wgn range:", min(kv), max(kv))
kv2 = [katz_amp(np.sin(2 * np.pi * np.arange(40000) / 100))]
print("sine:", kv2)

print("=== LZC timing ===")
bits = (np.random.Generator(np.random.Philox(5)).uniform(size=40000) > 0.5).astype(np.uint8)
_lz76_phrases(bits[:100])  # compile
t0 = time.time(); c = _lz76_phrases(bits); t1 = time.time()
print(f"40000 bits: c={c} in {t1-t0:.3f}s")

print("=== diag hist timing ===")
x = np.random.Generator(np.random.Philox(9)).standard_normal(2000)
pts = delay_embed(x, 3, 1)
d = squareform(pdist(pts))
R = d <= 0.12 * d.max()
t0 = time.time(); h = diagonal_line_lengths(R); t1 = time.time()
print(f"python loop: {t1-t0:.3f}s")
