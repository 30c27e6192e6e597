"""n-bit unsigned adder models and their error characterization.

An AdderModel is a pure function (a, b) -> sum over operands in
[0, 2^width); the result always fits in width+1 bits. Models are immutable
and safe to share across workers. Supported kinds:

  exact       -- a + b
  lower_or    -- low k bits ORed, a single AND-derived carry into an exact
                 upper section: ((a_hi + b_hi + c) << k) | (a_lo | b_lo)
                 with c = a[k-1] & b[k-1] (c = 0 when k = 0)
  truncated   -- upper exact sum, low k bits forced to all-ones:
                 ((a_hi + b_hi) << k) | (2^k - 1)
  netlist     -- topological simulation of an imported gate netlist
"""

import concurrent.futures
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as kernels
from .errors import CapacityError, InputError, NetlistParseError, ParameterError
from .netlist import parse_netlist

# exhaustive enumeration guard: 2^(2n) pairs must stay <= 2^26
MAX_EXHAUSTIVE_PAIRS = 1 << 26
# widest netlist that gets a lookup table (2^24 uint16 entries = 32 MiB)
MAX_LUT_WIDTH = 12

_CHUNK = 1 << 20

_KIND_CODES = {
    "exact": kernels.KIND_EXACT,
    "lower_or": kernels.KIND_LOWER_OR,
    "truncated": kernels.KIND_TRUNCATED,
}


@dataclass(frozen=True)
class AdderModel:
    name: str
    width: int
    kind: str
    k: int = 0
    netlist: object = None

    def evaluate(self, a, b):
        """Evaluate one operand pair. Raises InputError out of domain."""
        lim = 1 << self.width
        if not (0 <= a < lim and 0 <= b < lim):
            raise InputError(
                f"operands must be in [0, {lim}): got ({a}, {b})")
        if self.kind == "exact" or self.k == 0 and self.kind != "netlist":
            return a + b
        if self.kind == "lower_or":
            k = self.k
            lo = (1 << k) - 1
            carry = (a >> (k - 1)) & (b >> (k - 1)) & 1
            return (((a >> k) + (b >> k) + carry) << k) | ((a | b) & lo)
        if self.kind == "truncated":
            k = self.k
            return (((a >> k) + (b >> k)) << k) | ((1 << k) - 1)
        return self.netlist.evaluate_pair(a, b, self.width)

    def evaluate_many(self, a, b):
        """Vectorized evaluation over int64 numpy arrays."""
        if self.kind == "netlist":
            return self.netlist.evaluate_many(a, b, self.width)
        return kernels.add_many(_KIND_CODES[self.kind], self.k, self.width, None, a, b)

    def kernel_spec(self):
        """(kind_code, k, lut) for the compiled/vector kernels, or
        (None, 0, None) if this model needs the generic python path."""
        if self.kind != "netlist":
            return _KIND_CODES[self.kind], self.k, None
        if self.width <= MAX_LUT_WIDTH:
            return kernels.KIND_LUT, 0, adder_lut(self)
        return None, 0, None


def exact_adder(width, name=None):
    if width < 1:
        raise ParameterError("width must be >= 1")
    return AdderModel(name or f"exact_{width}", width, "exact")


def make_parametric(kind, width, k, name=None):
    """Build a lower_or or truncated adder with k approximated low bits."""
    kind = kind.replace("-", "_")
    if kind not in ("lower_or", "truncated"):
        raise ParameterError(f"unknown parametric kind '{kind}'")
    if width < 1:
        raise ParameterError("width must be >= 1")
    if not 0 <= k <= width:
        raise ParameterError(f"k must be in [0, {width}]: got {k}")
    return AdderModel(name or f"{kind}_{width}_{k}", width, kind, k)


def load_netlist(text, name="netlist"):
    """Parse gate-list text into a netlist-backed AdderModel.

    Width is inferred from the input count (2n inputs); the netlist must
    declare exactly n+1 outputs.
    """
    nl = parse_netlist(text)
    if len(nl.inputs) % 2 or not nl.inputs:
        raise NetlistParseError(
            f"adder netlist needs an even input count, got {len(nl.inputs)}")
    width = len(nl.inputs) // 2
    if len(nl.outputs) != width + 1:
        raise NetlistParseError(
            f"adder netlist of width {width} needs {width + 1} outputs, "
            f"got {len(nl.outputs)}")
    return AdderModel(name, width, "netlist", netlist=nl)


@lru_cache(maxsize=8)
def adder_lut(model):
    """Full lookup table result[(a << width) | b] for a netlist model."""
    n = model.width
    total = 1 << (2 * n)
    lut = np.empty(total, dtype=np.uint16)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        lut[lo:hi] = model.evaluate_many(idx >> n, idx & ((1 << n) - 1))
    return lut


@dataclass(frozen=True)
class ErrorReport:
    """Error metrics of a model against exact addition.

    mae_pct is normalized by the maximum exact sum 2^(width+1)-2 (recorded
    in mae_denominator); mae_pct_fullrange uses 2^(width+1)-1 instead so
    figures published under either base can be compared.
    """

    name: str
    width: int
    mode: str
    mae_pct: float
    ep_pct: float
    wce: int
    mse: float
    mre_pct: float
    sample_count: int
    mae_denominator: int
    mae_pct_fullrange: float

    def to_json(self):
        fields = ["name", "width", "mode", "mae_pct", "ep_pct", "wce", "mse",
                  "mre_pct", "sample_count", "mae_denominator",
                  "mae_pct_fullrange"]
        return json.dumps({f: getattr(self, f) for f in fields}, indent=2) + "\n"


def _chunk_partial(model, sampled, seed, lo, hi):
    code, k, lut = model.kernel_spec()
    if code is not None:
        if sampled:
            return kernels.pair_metrics_sampled(code, k, model.width, lut, seed, lo, hi)
        return kernels.pair_metrics(code, k, model.width, lut, lo, hi)
    n = model.width
    if sampled:
        a, b = kernels.sample_operands(seed, lo, hi, n)
    else:
        idx = np.arange(lo, hi, dtype=np.int64)
        a = idx >> n
        b = idx & ((1 << n) - 1)
    return kernels.accumulate_arrays(model.evaluate_many(a, b), a, b, n)


def _chunk_worker(args):
    return _chunk_partial(*args)


def error_metrics(model, mode="exhaustive", count=None, seed=0, jobs=1):
    """Characterize a model against exact addition.

    mode="exhaustive" enumerates all 2^(2*width) pairs (guarded at 2^26);
    mode="sampled" evaluates `count` counter-derived pairs, deterministic
    in (seed, sample index) regardless of worker count or chunking.
    """
    n = model.width
    if mode == "exhaustive":
        total = 1 << (2 * n)
        if total > MAX_EXHAUSTIVE_PAIRS:
            raise CapacityError(
                f"exhaustive mode needs 2^(2*{n}) <= 2^26 pairs; "
                f"use sampled mode for width {n}")
        sampled = False
    elif mode == "sampled":
        if count is None or count < 1:
            raise InputError("sampled mode requires count >= 1")
        total = int(count)
        sampled = True
    else:
        raise InputError(f"unknown mode '{mode}'")

    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    tasks = [(model, sampled, seed, lo, min(lo + _CHUNK, total))
             for lo in range(0, total, _CHUNK)]
    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_chunk_worker, tasks))
    else:
        partials = [_chunk_partial(*t) for t in tasks]

    cnt = sum(p[0] for p in partials)
    sum_abs = sum(p[1] for p in partials)
    sum_sq = sum(p[2] for p in partials)
    mismatches = sum(p[3] for p in partials)
    wce = max(p[4] for p in partials)
    by_exact = partials[0][5]
    for p in partials[1:]:
        by_exact = by_exact + p[5]

    denom = (1 << (n + 1)) - 2
    fullrange = (1 << (n + 1)) - 1
    # fixed ascending-bucket order keeps the float sum identical for any
    # worker count (the buckets themselves are exact integers)
    acc = 0.0
    for e in np.nonzero(by_exact)[0]:
        acc += int(by_exact[e]) / max(int(e), 1)
    return ErrorReport(
        name=model.name,
        width=n,
        mode=mode,
        mae_pct=100.0 * (sum_abs / cnt) / denom,
        ep_pct=100.0 * mismatches / cnt,
        wce=int(wce),
        mse=sum_sq / cnt,
        mre_pct=100.0 * acc / cnt,
        sample_count=cnt,
        mae_denominator=denom,
        mae_pct_fullrange=100.0 * (sum_abs / cnt) / fullrange,
    )


def builtin_from_spec(spec):
    """Parse 'exact:12', 'lower_or:12:6', 'truncated:8:4' into a model."""
    parts = spec.split(":")
    kind = parts[0].strip().replace("-", "_")
    try:
        if kind == "exact":
            if len(parts) != 2:
                raise ValueError
            return exact_adder(int(parts[1]))
        if kind in ("lower_or", "truncated"):
            if len(parts) != 3:
                raise ValueError
            return make_parametric(kind, int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ParameterError(f"bad builtin adder spec '{spec}'") from exc
    raise ParameterError(f"bad builtin adder spec '{spec}'")
