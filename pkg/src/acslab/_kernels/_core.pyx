# Compiled twin of acslab._kernels.pyref: same signatures, same integer
# semantics, bit-identical results. Only builtin adder kinds and LUT-backed
# netlists are handled here; wider netlists stay on the python path.

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint16_t, uint64_t

KIND_EXACT = 0
KIND_LOWER_OR = 1
KIND_TRUNCATED = 2
KIND_LUT = 3

cdef int64_t _I64_MAX = 0x7FFFFFFFFFFFFFFF

_EMPTY_U16 = np.zeros(1, dtype=np.uint16)


cdef inline int64_t _add1(int kind, int k, int n, const uint16_t[::1] lut,
                          int64_t a, int64_t b) noexcept nogil:
    cdef int64_t lo, carry
    if kind == 0 or k == 0 and (kind == 1 or kind == 2):
        return a + b
    if kind == 1:
        lo = (<int64_t>1 << k) - 1
        carry = (a >> (k - 1)) & (b >> (k - 1)) & 1
        return (((a >> k) + (b >> k) + carry) << k) | ((a | b) & lo)
    if kind == 2:
        lo = (<int64_t>1 << k) - 1
        return (((a >> k) + (b >> k)) << k) | lo
    return <int64_t>lut[(a << n) | b]


def acs_run(const int64_t[::1] syms, const int64_t[:, ::1] pred,
            const int64_t[:, ::1] tsym, const int64_t[::1] pm0,
            const int64_t[::1] popcnt, int kind, int k, int n,
            int64_t sat, lut=None):
    cdef Py_ssize_t T = syms.shape[0]
    cdef Py_ssize_t S = pred.shape[0]
    dec_arr = np.empty((T, S), dtype=np.uint8)
    pm_arr = np.empty(S, dtype=np.int64)
    new_arr = np.empty(S, dtype=np.int64)
    cdef uint8_t[:, ::1] dec = dec_arr
    cdef int64_t[::1] pm = pm_arr
    cdef int64_t[::1] newpm = new_arr
    cdef const uint16_t[::1] lv = _EMPTY_U16 if lut is None else lut
    cdef Py_ssize_t t, s
    cdef int64_t sym, c0, c1, v, mn
    cdef uint8_t d
    for s in range(S):
        pm[s] = pm0[s]
    with nogil:
        for t in range(T):
            sym = syms[t]
            mn = _I64_MAX
            for s in range(S):
                c0 = _add1(kind, k, n, lv, pm[pred[s, 0]], popcnt[tsym[s, 0] ^ sym])
                if c0 > sat:
                    c0 = sat
                c1 = _add1(kind, k, n, lv, pm[pred[s, 1]], popcnt[tsym[s, 1] ^ sym])
                if c1 > sat:
                    c1 = sat
                if c1 < c0:
                    d = 1
                    v = c1
                else:
                    d = 0
                    v = c0
                dec[t, s] = d
                newpm[s] = v
                if v < mn:
                    mn = v
            for s in range(S):
                pm[s] = newpm[s] - mn
    return dec_arr, pm_arr.astype(np.uint32)


def traceback(const uint8_t[:, ::1] dec, const int64_t[:, ::1] pred,
              end_state, shift):
    cdef Py_ssize_t T = dec.shape[0]
    bits_arr = np.empty(T, dtype=np.uint8)
    cdef uint8_t[::1] bits = bits_arr
    cdef Py_ssize_t t
    cdef int64_t s = end_state
    cdef int sh = shift
    for t in range(T - 1, -1, -1):
        bits[t] = <uint8_t>(s >> sh)
        s = pred[s, dec[t, s]]
    return bits_arr


cdef _finish(int64_t count, int64_t sum_abs, int64_t sum_sq, int64_t mism,
             int64_t wce, by_exact):
    return int(count), int(sum_abs), int(sum_sq), int(mism), int(wce), by_exact


def pair_metrics(int kind, int k, int n, lut, start, stop):
    cdef const uint16_t[::1] lv = _EMPTY_U16 if lut is None else lut
    by_exact_arr = np.zeros((1 << (n + 1)) - 1, dtype=np.int64)
    cdef int64_t[::1] by_exact = by_exact_arr
    cdef int64_t lo = start, hi = stop
    cdef int64_t mask = (<int64_t>1 << n) - 1
    cdef int64_t idx, a, b, err, sum_abs = 0, sum_sq = 0, mism = 0, wce = 0
    with nogil:
        for idx in range(lo, hi):
            a = idx >> n
            b = idx & mask
            err = _add1(kind, k, n, lv, a, b) - (a + b)
            if err < 0:
                err = -err
            if err != 0:
                mism += 1
                sum_abs += err
                sum_sq += err * err
                if err > wce:
                    wce = err
                by_exact[a + b] += err
    return _finish(hi - lo, sum_abs, sum_sq, mism, wce, by_exact_arr)


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


def pair_metrics_sampled(int kind, int k, int n, lut, seed, start, stop):
    cdef const uint16_t[::1] lv = _EMPTY_U16 if lut is None else lut
    by_exact_arr = np.zeros((1 << (n + 1)) - 1, dtype=np.int64)
    cdef int64_t[::1] by_exact = by_exact_arr
    cdef uint64_t sd = seed & 0xFFFFFFFFFFFFFFFF
    cdef uint64_t golden = <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t mask = (<uint64_t>1 << n) - 1
    cdef int64_t lo = start, hi = stop
    cdef int64_t idx, a, b, err, sum_abs = 0, sum_sq = 0, mism = 0, wce = 0
    cdef uint64_t z
    with nogil:
        for idx in range(lo, hi):
            z = _mix64(sd + (<uint64_t>idx + 1) * golden)
            a = <int64_t>(z & mask)
            b = <int64_t>((z >> 32) & mask)
            err = _add1(kind, k, n, lv, a, b) - (a + b)
            if err < 0:
                err = -err
            if err != 0:
                mism += 1
                sum_abs += err
                sum_sq += err * err
                if err > wce:
                    wce = err
                by_exact[a + b] += err
    return _finish(hi - lo, sum_abs, sum_sq, mism, wce, by_exact_arr)
