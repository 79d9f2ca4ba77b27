import time
import numpy as np
from merstn.features.nonlinear import lz76_phrase_count


def ks_naive(s):
    """Kaspar-Schuster reference scan."""
    n = len(s)
    if n == 0:
        return 0
    if n == 1:
        return 1
    c, l, i, k, k_max = 1, 1, 0, 1, 1
    while True:
        if s[i + k - 1] == s[l + k - 1]:
            k += 1
            if l + k > n:
                c += 1
                break
        else:
            if k > k_max:
                k_max = k
            i += 1
            if i == l:
                c += 1
                l += k_max
                if l + 1 > n:
                    break
                i, k, k_max = 0, 1, 1
            else:
                k = 1
    return c


# hand cases
cases = [
    np.zeros(4, np.uint8),
    np.zeros(1024, np.uint8),
    np.tile([0, 1], 512).astype(np.uint8),
    np.array([0], np.uint8),
    np.array([1], np.uint8),
    np.array([0, 1], np.uint8),
    np.array([1, 0, 0, 1, 1, 1, 1, 0], np.uint8),  # example-ish
    np.ones(7, np.uint8),
    np.array([0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1], np.uint8),
]
for s in cases:
    a, b = lz76_phrase_count(s), ks_naive(list(s))
    status = "OK" if a == b else "MISMATCH"
    print(f"{''.join(map(str, s[:24]))}... sam={a} ks={b} {status}")

# random fuzz
rng = np.random.Generator(np.random.Philox(42))
bad = 0
t0 = time.time()
for trial in range(3000):
    n = int(rng.integers(1, 400))
    p = rng.uniform(0.05, 0.95)
    s = (rng.uniform(size=n) < p).astype(np.uint8)
    if lz76_phrase_count(s) != ks_naive(list(s)):
        bad += 1
        if bad < 5:
            print("MISMATCH:", s.tolist())
print(f"fuzz: {bad} mismatches / 3000 ({time.time()-t0:.1f}s)")

# structured fuzz: periodic, runs
for trial in range(500):
    n = int(rng.integers(10, 600))
    period = int(rng.integers(1, 10))
    base = (rng.uniform(size=period) < 0.5).astype(np.uint8)
    s = np.tile(base, n // period + 1)[:n]
    if lz76_phrase_count(s) != ks_naive(list(s)):
        bad += 1
        print("PERIODIC MISMATCH:", base.tolist(), n)
print(f"structured: {bad} total mismatches")

# timing at 40000
bits = (rng.uniform(size=40000) > 0.5).astype(np.uint8)
t0 = time.time()
c = lz76_phrase_count(bits)
t1 = time.time()
print(f"sam 40000: c={c} in {t1-t0:.4f}s  (ks would give {ks_naive(bits.tolist() if False else bits[:2000].tolist())} on first 2000)")
print("ks on same 40000 (slow check)...")
t0 = time.time()
ck = ks_naive(bits.tolist())
print(f"ks: c={ck} match={ck == c} ({time.time()-t0:.1f}s)")
