import time
import numpy as np
from merstn.features import (
    EmbeddingParams, rqa_metrics, lle_rosenstein, hurst_rs, higuchi_fd,
    katz_fd, lz_complexity, shannon_entropy, permutation_entropy,
    sample_entropy, approximate_entropy, tsallis_entropy,
    extract_features, FeatureConfig,
)
from merstn.features.nonlinear import lz76_phrase_count

rng = np.random.Generator(np.random.Philox(7))

print("=== RQA epsilon conventions ===")
# spec decision: 0.2 * std of embedded coords; example demands RR in [0.01, 0.2]
x = rng.uniform(size=800)
from merstn.features.embedding import delay_embed
from scipy.spatial.distance import pdist, squareform
pts = delay_embed(x, 3, 1)
d = squareform(pdist(pts))
eps_std = 0.2 * pts.std()
eps_diam = 0.2 * d.max()
print("RR with 0.2*std(coords):", (d <= eps_std).mean())
print("RR with 0.2*diameter:  ", (d <= eps_diam).mean())

print("--- uniform noise draws (eps=0.2*diam) ---")
rrs, dets = [], []
for i in range(20):
    xi = np.random.Generator(np.random.Philox(100 + i)).uniform(size=700)
    res = rqa_metrics(xi, EmbeddingParams(m=3, tau=1))
    rrs.append(res.rr); dets.append(res.det)
print("RR range:", min(rrs), max(rrs), "DET range:", min(dets), max(dets))

print("--- sine 20 cycles ---")
n = 2000
sine = np.sin(2 * np.pi * 20 * np.arange(n) / n)
res = rqa_metrics(sine, EmbeddingParams(m=3))
print("sine:", res)

print("--- constant ---")
res = rqa_metrics(np.ones(500), EmbeddingParams(m=3, tau=1))
print("const rr/det:", res.rr, res.det)

print("=== LLE ===")
def logistic(r, x0, n):
    out = np.empty(n); out[0] = x0
    for i in range(n - 1):
        out[i + 1] = r * out[i] * (1 - out[i])
    return out

lm = logistic(4.0, 0.2, 2000)
for margin in (0.3, 0.5, 0.7, 1.0):
    from merstn.features.nonlinear import _lle_from_embedding
    pts = delay_embed(lm, 2, 1)
    dd = squareform(pdist(pts))
    s, fit, np_ = _lle_from_embedding(pts, dd, 1, 2, 20, sat_margin=margin)
    print(f"logistic r=4 margin={margin}: slope={s:.4f} fit={fit}")

r = lle_rosenstein(lm, EmbeddingParams(m=2, tau=1))
print("logistic r=4 default:", r.lle, r.fit_steps)

lm2 = logistic(3.2, 0.2, 2000)
r2 = lle_rosenstein(lm2, EmbeddingParams(m=2, tau=1))
print("logistic r=3.2:", r2.lle)

sine2 = np.sin(2 * np.pi * 20 * np.arange(2000) / 2000)
r3 = lle_rosenstein(sine2, EmbeddingParams(m=3))
print("sine lle:", r3.lle, r3.fit_steps)

print("=== Hurst ===")
for mb in (16, 32, 64):
    w = np.random.Generator(np.random.Philox(11)).standard_normal(40000)
    print(f"min_block={mb}: wgn={hurst_rs(w, mb):.3f}, walk={hurst_rs(np.cumsum(w), mb):.3f}, alt={hurst_rs(np.tile([1.0, -1.0], 20000), mb):.3f}")
hs = [hurst_rs(np.random.Generator(np.random.Philox(500 + i)).standard_normal(40000)) for i in range(10)]
print("wgn hurst spread over seeds:", min(hs), max(hs))

print("=== Higuchi ===")
ramp = np.arange(40000, dtype=float)
print("ramp:", higuchi_fd(ramp))
w = rng.standard_normal(40000)
print("wgn:", higuchi_fd(w))
sine3 = np.sin(2 * np.pi * np.arange(40000) / 100)  # 100 samples/cycle
print("sine:", higuchi_fd(sine3))

print("=== Katz ===")
line = 2.0 * np.arange(100) + 1.0
print("line 2x+1:", katz_fd(line), "== 1.0:", katz_fd(line).kfd == 1.0)
line3 = np.sqrt(3.0) * np.arange(100) + 1.0
print("line sqrt3:", katz_fd(line3).kfd == 1.0)
kvals = [katz_fd(np.random.Generator(np.random.Philox(200 + i)).standard_normal(40000)).kfd for i in range(10)]
print("wgn katz range:", min(kvals), max(kvals))
print("const:", katz_fd(np.ones(100)))

print("=== LZC ===")
t0 = time.time()
const = np.zeros(1024)
print("const c:", lz76_phrase_count((const > np.median(const)).astype(np.uint8)), "lzc:", lz_complexity(const))
alt = np.tile([0.0, 1.0], 512)
bits = (alt > np.median(alt)).astype(np.uint8)
print("alt c:", lz76_phrase_count(bits))
coin = (rng.uniform(size=40000) > 0.5).astype(float)
t1 = time.time()
print("coin lzc:", lz_complexity(coin), f"(jit+run {t1-t0:.2f}s)")
t2 = time.time()
print("coin lzc again:", lz_complexity((rng.uniform(size=40000) > 0.5).astype(float)), f"({time.time()-t2:.3f}s)")

print("=== entropies ===")
u4 = np.tile([0.0, 1.0, 2.0, 3.0], 1000)
print("uniform4 shannon:", shannon_entropy(u4, bins=4), "tsallis q2:", tsallis_entropy(u4, 2.0, 4))
print("ramp perm:", permutation_entropy(np.arange(1000.0)))
w6 = rng.standard_normal(40000)
print("wgn perm (vs", np.log2(6), "):", permutation_entropy(w6))
zig = np.tile([0.0, 1.0], 500)
print("zigzag perm:", permutation_entropy(zig))

w2000 = rng.standard_normal(2000)
se = sample_entropy(w2000)
print("sampen wgn 2000:", se.value)
print("apen const:", approximate_entropy(np.ones(300)))
print("sampen const:", sample_entropy(np.ones(300)))

print("=== extract timing ===")
win = rng.standard_normal(40000)
t0 = time.time()
fv = extract_features(win)
t1 = time.time()
fv2 = extract_features(win)
t2 = time.time()
print(f"first: {t1-t0:.2f}s second: {t2-t1:.2f}s")
print("finite:", np.all(np.isfinite(fv.values())), "mask:", fv.undefined_mask)
print("identical:", fv == fv2)
print(dict(zip(("rr","det","l_avg","lle","hurst","hfd","kfd","lzc","shan","perm","sampen","apen","tsallis"), [f"{v:.4f}" for v in fv.values()])))
