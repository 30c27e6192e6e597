"""Convolutional encoder and trellis Viterbi decoder.

The decoder's add-compare-select recursion routes every path-metric
addition through a pluggable AdderModel (hard-decision Hamming branch
metrics, saturating arithmetic at the decoder word width, subtract-min
normalization each step). Comparison, selection and normalization stay
exact; only the two additions per state go through the adder.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as kernels
from .errors import ConfigError, FramingError, InputError


def _as_bits(x):
    if isinstance(x, str):
        x = [int(c) for c in x]
    arr = np.asarray(x, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise InputError("bit sequences may only contain 0 and 1")
    return arr


@dataclass(frozen=True)
class ConvCode:
    """Rate 1/len(generators) convolutional code.

    Shift-register convention: consuming input bit b in state s forms the
    window w = (b << (K-1)) | s; output bit j is parity(w & generators[j]);
    the next state is w >> 1.
    """

    constraint_length: int
    generators: tuple

    def __post_init__(self):
        K = self.constraint_length
        if K < 2:
            raise ConfigError("constraint length must be >= 2")
        gens = tuple(int(g) for g in self.generators)
        if not gens:
            raise ConfigError("need at least one generator")
        for g in gens:
            if not 0 < g < (1 << K):
                raise ConfigError(
                    f"generator {g:#o} out of range for K={K}")
        object.__setattr__(self, "generators", gens)

    @property
    def num_states(self):
        return 1 << (self.constraint_length - 1)

    @property
    def n_out(self):
        return len(self.generators)

    @classmethod
    def from_octal(cls, constraint_length, generators_octal):
        gens = tuple(int(str(g), 8) for g in generators_octal)
        return cls(constraint_length, gens)


DEFAULT_CODE = ConvCode(3, (0o7, 0o5))


class Trellis:
    """Expanded state-transition structure of a ConvCode.

    pred[s, i] enumerates the two predecessors of state s (i is the low bit
    of the predecessor); tsym[s, i] is the symbol emitted on that
    transition. Arriving at state s always consumes input bit s >> (K-2).
    """

    def __init__(self, code):
        K = self.constraint_length = code.constraint_length
        self.n_out = code.n_out
        S = self.num_states = code.num_states
        par = np.zeros(1 << K, dtype=np.int64)
        for w in range(1 << K):
            par[w] = bin(w).count("1") & 1
        self.window_parity = par
        self.next_state = np.zeros((S, 2), dtype=np.int64)
        self.out_sym = np.zeros((S, 2), dtype=np.int64)
        for s in range(S):
            for b in (0, 1):
                w = (b << (K - 1)) | s
                sym = 0
                for j, g in enumerate(code.generators):
                    sym |= int(par[w & g]) << j
                self.next_state[s, b] = w >> 1
                self.out_sym[s, b] = sym
        self.pred = np.zeros((S, 2), dtype=np.int64)
        self.tsym = np.zeros((S, 2), dtype=np.int64)
        low_mask = (1 << (K - 2)) - 1
        for s in range(S):
            b = s >> (K - 2)
            for i in (0, 1):
                p = ((s & low_mask) << 1) | i
                self.pred[s, i] = p
                self.tsym[s, i] = self.out_sym[p, b]
        self.popcnt = np.zeros(1 << self.n_out, dtype=np.int64)
        for v in range(1 << self.n_out):
            self.popcnt[v] = bin(v).count("1")


@lru_cache(maxsize=32)
def build_trellis(code):
    return Trellis(code)


def conv_encode(code, bits, flush=False):
    """Encode a bit sequence; flush appends K-1 zero input bits so the
    register returns to state 0. Output length is n_out * input length."""
    b = _as_bits(bits)
    K = code.constraint_length
    if flush:
        b = np.concatenate([b, np.zeros(K - 1, dtype=np.uint8)])
    if b.size == 0:
        return np.zeros(0, dtype=np.uint8)
    tr = build_trellis(code)
    w = np.zeros(b.size, dtype=np.int64)
    bi = b.astype(np.int64)
    for m in range(min(K, b.size)):
        w[m:] |= bi[:b.size - m] << (K - 1 - m)
    out = np.empty((b.size, code.n_out), dtype=np.uint8)
    for j, g in enumerate(code.generators):
        out[:, j] = tr.window_parity[w & g]
    return out.reshape(-1)


def branch_metric(expected, received):
    """Hamming distance between two equal-width symbols."""
    e = _as_bits(expected)
    r = _as_bits(received)
    if e.shape != r.shape:
        raise InputError("symbol width mismatch")
    return int(np.count_nonzero(e != r))


def _check_adder(adder, word_width):
    if adder.width < word_width:
        raise ConfigError(
            f"adder width {adder.width} smaller than decoder word width "
            f"{word_width}")


def acs_step(pms, bms, trellis, adder, word_width=None):
    """One add-compare-select step.

    pms: per-state metrics (min 0); bms[s, i]: branch metric of the
    transition pred[s, i] -> s. Returns the re-normalized new metric
    vector and the per-state decision bits (ties select predecessor 0).
    """
    w = adder.width if word_width is None else word_width
    _check_adder(adder, w)
    sat = (1 << w) - 1
    pm = np.asarray(pms, dtype=np.int64)
    bm = np.asarray(bms, dtype=np.int64)
    a = pm[trellis.pred.reshape(-1)]
    cand = adder.evaluate_many(a, bm.reshape(-1))
    cand = np.minimum(cand, sat).reshape(trellis.num_states, 2)
    dec = (cand[:, 1] < cand[:, 0]).astype(np.uint8)
    new = np.where(dec, cand[:, 1], cand[:, 0])
    return new - new.min(), dec


def viterbi_decode(code, received, adder, word_width=12, flushed=True):
    """Block decode: ACS over all symbols, then traceback.

    Starts in state 0; ends in state 0 when `flushed` (the K-1 flush bits
    are removed from the result), else in the minimum-metric state.
    """
    r = _as_bits(received)
    n = code.n_out
    if r.size % n:
        raise FramingError(
            f"received length {r.size} not divisible by {n}")
    _check_adder(adder, word_width)
    K = code.constraint_length
    if r.size == 0:
        return np.zeros(0, dtype=np.uint8)
    T = r.size // n
    tr = build_trellis(code)
    syms = (r.reshape(T, n).astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=1)
    sat = (1 << word_width) - 1
    pm0 = np.full(tr.num_states, sat, dtype=np.int64)
    pm0[0] = 0
    kind, k, lut = adder.kernel_spec()
    if kind is None:
        dec, pm = kernels.acs_run_generic(
            syms, tr.pred, tr.tsym, pm0, tr.popcnt, adder.evaluate_many, sat)
    else:
        dec, pm = kernels.acs_run(
            syms, tr.pred, tr.tsym, pm0, tr.popcnt, kind, k, adder.width,
            sat, lut)
    end_state = 0 if flushed else int(np.argmin(pm))
    bits = kernels.traceback(dec, tr.pred, end_state, K - 2)
    if flushed:
        bits = bits[:max(T - (K - 1), 0)]
    return np.asarray(bits, dtype=np.uint8)
