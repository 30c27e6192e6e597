"""Pure numpy implementations of the hot kernels.

Mirrors `acslab._kernels._core` (the Cython extension) exactly: same
function signatures, same integer semantics, bit-identical results. The
package falls back to this module when the extension is unavailable or
when ACSLAB_PURE_PYTHON=1 is set.
"""

import numpy as np

KIND_EXACT = 0
KIND_LOWER_OR = 1
KIND_TRUNCATED = 2
KIND_LUT = 3

# splitmix64 constants; sample i is a pure function of (seed, i) so that
# any partition of the sample space yields the same operand stream.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def add_many(kind, k, n, lut, a, b):
    """Vectorized adder evaluation on int64 operand arrays."""
    if kind == KIND_EXACT or (k == 0 and kind in (KIND_LOWER_OR, KIND_TRUNCATED)):
        return a + b
    if kind == KIND_LOWER_OR:
        lo = (1 << k) - 1
        carry = (a >> (k - 1)) & (b >> (k - 1)) & 1
        return (((a >> k) + (b >> k) + carry) << k) | ((a | b) & lo)
    if kind == KIND_TRUNCATED:
        lo = (1 << k) - 1
        return (((a >> k) + (b >> k)) << k) | lo
    if kind == KIND_LUT:
        return lut[(a << n) | b].astype(np.int64)
    raise ValueError(f"unknown adder kind code {kind}")


def acs_run(syms, pred, tsym, pm0, popcnt, kind, k, n, sat, lut=None):
    """Run the add-compare-select recursion over a whole symbol stream.

    syms: (T,) received symbols as ints; pred: (S,2) predecessor states;
    tsym: (S,2) expected symbol on the transition pred[s,i] -> s;
    pm0: (S,) starting path metrics; popcnt: popcount table over symbol
    space; sat: saturation ceiling 2^w - 1. Returns the (T,S) decision
    matrix and the final normalized path-metric vector.
    """
    T = len(syms)
    S = pred.shape[0]
    dec = np.empty((T, S), dtype=np.uint8)
    pm = pm0.astype(np.int64)
    for t in range(T):
        bm = popcnt[tsym ^ syms[t]]
        cand = add_many(kind, k, n, lut, pm[pred], bm)
        np.minimum(cand, sat, out=cand)
        d = cand[:, 1] < cand[:, 0]
        dec[t] = d
        pm = np.where(d, cand[:, 1], cand[:, 0])
        pm = pm - pm.min()
    return dec, pm.astype(np.uint32)


def acs_run_generic(syms, pred, tsym, pm0, popcnt, add_fn, sat):
    """acs_run for adders only evaluatable through a callable (netlists
    too wide for a lookup table). Python-level only; never accelerated."""
    T = len(syms)
    S = pred.shape[0]
    dec = np.empty((T, S), dtype=np.uint8)
    pm = pm0.astype(np.int64)
    for t in range(T):
        bm = popcnt[tsym ^ syms[t]]
        cand = add_fn(pm[pred].reshape(-1), bm.reshape(-1)).reshape(S, 2)
        cand = np.minimum(cand, sat)
        d = cand[:, 1] < cand[:, 0]
        dec[t] = d
        pm = np.where(d, cand[:, 1], cand[:, 0])
        pm = pm - pm.min()
    return dec, pm.astype(np.uint32)


def traceback(dec, pred, end_state, shift):
    """Walk the decision matrix backwards from end_state, recovering the
    input bit consumed at each step (bit = state >> shift)."""
    T = dec.shape[0]
    bits = np.empty(T, dtype=np.uint8)
    s = int(end_state)
    for t in range(T - 1, -1, -1):
        bits[t] = s >> shift
        s = int(pred[s, dec[t, s]])
    return bits


def _accumulate(kind, k, n, lut, a, b):
    return accumulate_arrays(add_many(kind, k, n, lut, a, b), a, b, n)


def accumulate_arrays(approx, a, b, n):
    """Error-metric partial sums from a precomputed approx-result array
    (generic path for adders without a kernel kind code)."""
    exact = a + b
    err = np.abs(approx - exact)
    count = int(a.size)
    sum_abs = int(err.sum())
    sum_sq = int((err * err).sum())
    mismatches = int(np.count_nonzero(err))
    wce = int(err.max(initial=0))
    # one integer |err| accumulator per possible exact sum, so the final
    # mean-relative-error division happens once, in a fixed order
    nbuckets = (1 << (n + 1)) - 1
    by_exact = np.bincount(exact, weights=err.astype(np.float64),
                           minlength=nbuckets).astype(np.int64)
    return count, sum_abs, sum_sq, mismatches, wce, by_exact


def pair_metrics(kind, k, n, lut, start, stop):
    """Error-metric partial sums over pair indices [start, stop) of the
    exhaustive operand space (idx = a*2^n + b)."""
    idx = np.arange(start, stop, dtype=np.int64)
    a = idx >> n
    b = idx & ((1 << n) - 1)
    return _accumulate(kind, k, n, lut, a, b)


def sample_operands(seed, start, stop, n):
    """Counter-based operand stream: pair i depends only on (seed, i)."""
    idx = np.arange(start, stop, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (idx + np.uint64(1)) * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    mask = np.uint64((1 << n) - 1)
    a = (z & mask).astype(np.int64)
    b = ((z >> np.uint64(32)) & mask).astype(np.int64)
    return a, b


def pair_metrics_sampled(kind, k, n, lut, seed, start, stop):
    """Error-metric partial sums over sample indices [start, stop)."""
    a, b = sample_operands(seed, start, stop, n)
    return _accumulate(kind, k, n, lut, a, b)
