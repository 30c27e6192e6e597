"""End-to-end digital communication pipeline and BER-vs-SNR sweeps.

Chain per run: huffman_encode -> conv_encode(flush) -> modulate -> awgn ->
demodulate -> viterbi_decode -> huffman_decode. BER is measured between
the post-Huffman source bitstream and the channel decoder's output; the
Huffman-decoded text is only used for the corruption flag (<1% symbol
match averaged over runs).

Every sweep cell derives its own seed from (master_seed, adder index,
modulation index, snr index, run index), so results are independent of
execution order and worker count.
"""

import concurrent.futures
import csv
import dataclasses
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError
from .huffman import char_frequencies, huffman_build
from .modem import SCHEMES, awgn, demodulate, modulate
from .viterbi import DEFAULT_CODE, ConvCode, conv_encode, viterbi_decode

MODULATIONS = SCHEMES


@dataclass(frozen=True)
class PipelineConfig:
    modulation: str = "BPSK"
    samples_per_bit: int = 40
    bitrate: float = 1000.0
    carrier_freq: float = 1000.0
    carrier_amplitude: float = 1.0
    snr_db_range: tuple = tuple(range(-15, 11))
    code: ConvCode = DEFAULT_CODE
    decoder_word_width: int = 12
    runs_per_snr: int = 12
    master_seed: int = 0
    snr_mode: str = "per_sample"

    def validation_errors(self):
        """All config problems at once (empty list when valid)."""
        errs = []
        if self.modulation not in MODULATIONS:
            errs.append(f"modulation must be one of {MODULATIONS}")
        if self.samples_per_bit < 2:
            errs.append("samples_per_bit must be >= 2")
        if not self.snr_db_range:
            errs.append("snr_db_range is empty")
        elif not all(math.isfinite(s) for s in self.snr_db_range):
            errs.append("snr_db_range contains non-finite values")
        if self.runs_per_snr < 1:
            errs.append("runs_per_snr must be >= 1")
        if self.decoder_word_width < 1:
            errs.append("decoder_word_width must be >= 1")
        if self.snr_mode not in ("per_sample", "eb_n0"):
            errs.append("snr_mode must be per_sample or eb_n0")
        if self.bitrate <= 0 or self.carrier_freq <= 0:
            errs.append("bitrate and carrier_freq must be positive")
        return errs

    def validate(self):
        errs = self.validation_errors()
        if errs:
            raise ConfigError("; ".join(errs))
        return self

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        code = d.pop("code", None)
        if code is not None:
            d["code"] = ConvCode.from_octal(
                code["constraint_length"], code["generators_octal"])
        if "snr_db_range" in d:
            d["snr_db_range"] = tuple(d["snr_db_range"])
        unknown = set(d) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["code"] = (None if self.code is None else
                     {"constraint_length": self.code.constraint_length,
                      "generators_octal": [f"{g:o}" for g in self.code.generators]})
        d["snr_db_range"] = list(self.snr_db_range)
        return d


@dataclass(frozen=True)
class BerResult:
    adder: str
    modulation: str
    snr_db: float
    ber: float
    bits_compared: int
    runs: int
    corrupt: bool = False
    symbol_match_pct: float = 100.0


def derive_seed(master_seed, adder_idx, mod_idx, snr_idx, run_idx):
    """Stable per-cell seed; SeedSequence mixes the index tuple."""
    ss = np.random.SeedSequence(
        [int(master_seed) & 0xFFFFFFFFFFFFFFFF,
         adder_idx, mod_idx, snr_idx, run_idx])
    return int(ss.generate_state(1, np.uint64)[0])


def symbol_match_pct(original, decoded):
    """Positionwise symbol agreement, as % of the original length."""
    if not original:
        return 100.0
    hits = sum(1 for a, b in zip(original, decoded) if a == b)
    return 100.0 * hits / len(original)


def run_pipeline(cfg, text, snr_db, adder, seed):
    """One transmission of `text` at one SNR; returns a single-run BerResult."""
    if not text:
        raise InputError("empty corpus text")
    codebook = huffman_build(char_frequencies(text))
    src = codebook.encode(text)
    coded = conv_encode(cfg.code, src, flush=True) if cfg.code else src
    wave = modulate(cfg.modulation, coded, cfg)
    noisy = awgn(wave, snr_db, seed, cfg.snr_mode, cfg.samples_per_bit)
    hard = demodulate(cfg.modulation, noisy, cfg)
    if cfg.code:
        out = viterbi_decode(cfg.code, hard, adder, cfg.decoder_word_width,
                             flushed=True)
    else:
        out = hard
    if out.size != src.size:
        raise InputError(
            f"decoder returned {out.size} bits for {src.size} source bits")
    errors = int(np.count_nonzero(out != src))
    decoded_text, _ = codebook.decode(out)
    match = symbol_match_pct(text, decoded_text)
    return BerResult(adder.name, cfg.modulation, snr_db,
                     ber=errors / src.size, bits_compared=src.size, runs=1,
                     corrupt=match < 1.0, symbol_match_pct=match)


def _sweep_cell(args):
    cfg, text, adder, mod, snr, seed = args
    cell_cfg = dataclasses.replace(cfg, modulation=mod)
    return run_pipeline(cell_cfg, text, snr, adder, seed)


def ber_sweep(cfg, adders, corpus_text, modulations=None, jobs=1):
    """Run the full (adder x modulation x snr x run) grid and average runs.

    Returns BerResult rows in canonical order; bit-reproducible for a given
    master_seed regardless of `jobs`.
    """
    cfg.validate()
    mods = list(modulations) if modulations else [cfg.modulation]
    for m in mods:
        if m not in MODULATIONS:
            raise ConfigError(f"unknown modulation '{m}'")
    snrs = list(cfg.snr_db_range)
    tasks = []
    for ai, adder in enumerate(adders):
        for mi, mod in enumerate(mods):
            for si, snr in enumerate(snrs):
                for ri in range(cfg.runs_per_snr):
                    seed = derive_seed(cfg.master_seed, ai, mi, si, ri)
                    tasks.append((cfg, corpus_text, adder, mod, snr, seed))
    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_cell, tasks, chunksize=4))
    else:
        results = [_sweep_cell(t) for t in tasks]

    rows = []
    runs = cfg.runs_per_snr
    idx = 0
    for ai, adder in enumerate(adders):
        for mod in mods:
            for snr in snrs:
                cell = results[idx:idx + runs]
                idx += runs
                match = float(np.mean([r.symbol_match_pct for r in cell]))
                rows.append(BerResult(
                    adder.name, mod, snr,
                    ber=float(np.mean([r.ber for r in cell])),
                    bits_compared=sum(r.bits_compared for r in cell),
                    runs=runs, corrupt=match < 1.0, symbol_match_pct=match))
    return rows


def write_ber_csv(rows, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["adder", "modulation", "snr_db", "ber", "bits_compared",
                    "runs", "corrupt_flag"])
        for r in rows:
            w.writerow([r.adder, r.modulation, repr(float(r.snr_db)),
                        repr(r.ber), r.bits_compared, r.runs,
                        int(r.corrupt)])
