"""Carrier-domain modulation, AWGN channel and coherent demodulation.

Schemes: BASK (on-off keying), BPSK (antipodal), QPSK (Gray-mapped bit
pairs on phases 45/135/225/315 degrees, one symbol per two bit periods).
The carrier phase reference is global (t = sample_index / sample_rate), so
demodulation correlates against the same reference the modulator used.
"""

import numpy as np

from .errors import FramingError, InputError
from .viterbi import _as_bits

SCHEMES = ("BASK", "BPSK", "QPSK")

# pair (b0, b1) -> carrier phase; adjacent phases differ in one bit
_QPSK_PHASE = {(0, 0): 0.25 * np.pi, (0, 1): 0.75 * np.pi,
               (1, 1): 1.25 * np.pi, (1, 0): 1.75 * np.pi}


class Waveform:
    """Real-valued sample sequence with its rate and QPSK padding note."""

    __slots__ = ("samples", "sample_rate", "pad_bits")

    def __init__(self, samples, sample_rate, pad_bits=0):
        self.samples = np.asarray(samples, dtype=np.float64)
        self.sample_rate = float(sample_rate)
        self.pad_bits = int(pad_bits)

    def __len__(self):
        return self.samples.size


def modulate(scheme, bits, cfg):
    """Map a bit sequence onto the carrier per the scheme.

    QPSK pads an odd-length sequence with one zero bit and records it in
    the returned Waveform so demodulation can strip it.
    """
    if scheme not in SCHEMES:
        raise InputError(f"unknown modulation scheme '{scheme}'")
    b = _as_bits(bits)
    fs = cfg.bitrate * cfg.samples_per_bit
    amp = cfg.carrier_amplitude
    spb = cfg.samples_per_bit
    pad = 0
    if scheme == "QPSK" and b.size % 2:
        b = np.concatenate([b, np.zeros(1, dtype=np.uint8)])
        pad = 1
    if b.size == 0:
        return Waveform(np.zeros(0), fs, pad)
    if scheme in ("BASK", "BPSK"):
        n = b.size * spb
        t = np.arange(n) / fs
        carrier = amp * np.cos(2.0 * np.pi * cfg.carrier_freq * t)
        if scheme == "BASK":
            gain = np.repeat(b.astype(np.float64), spb)
        else:
            gain = np.repeat(2.0 * b - 1.0, spb)
        return Waveform(carrier * gain, fs, pad)
    # QPSK: two bits per symbol interval of 2*spb samples
    pairs = b.reshape(-1, 2)
    phases = np.array([_QPSK_PHASE[(int(p[0]), int(p[1]))] for p in pairs])
    n = pairs.shape[0] * 2 * spb
    t = np.arange(n) / fs
    phi = np.repeat(phases, 2 * spb)
    return Waveform(amp * np.cos(2.0 * np.pi * cfg.carrier_freq * t + phi), fs, pad)


def awgn(wave, snr_db, seed, snr_mode="per_sample", samples_per_bit=None):
    """Add white Gaussian noise at the requested SNR.

    per_sample: sigma^2 = P_sig / 10^(snr/10) with P_sig the empirical mean
    square of the transmitted samples. eb_n0: sigma^2 = P_sig *
    samples_per_bit / (2 * 10^(snr/10)). Deterministic given seed.
    """
    if len(wave) == 0:
        raise InputError("cannot add noise to an empty waveform")
    psig = float(np.mean(wave.samples ** 2))
    gamma = 10.0 ** (snr_db / 10.0)
    if snr_mode == "per_sample":
        var = psig / gamma
    elif snr_mode == "eb_n0":
        if not samples_per_bit:
            raise InputError("eb_n0 mode needs samples_per_bit")
        var = psig * samples_per_bit / (2.0 * gamma)
    else:
        raise InputError(f"unknown snr_mode '{snr_mode}'")
    rng = np.random.default_rng(seed)
    noisy = wave.samples + rng.normal(0.0, np.sqrt(var), len(wave))
    return Waveform(noisy, wave.sample_rate, wave.pad_bits)


def demodulate(scheme, wave, cfg):
    """Coherent correlation receiver; exact inverse of modulate when
    noiseless. Returns hard bits with any QPSK pad stripped."""
    if scheme not in SCHEMES:
        raise InputError(f"unknown modulation scheme '{scheme}'")
    spb = cfg.samples_per_bit
    sps = spb if scheme in ("BASK", "BPSK") else 2 * spb
    n = len(wave)
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    if n % sps:
        raise FramingError(
            f"waveform length {n} not divisible by {sps} samples/symbol")
    fs = wave.sample_rate
    t = np.arange(n) / fs
    ref_i = np.cos(2.0 * np.pi * cfg.carrier_freq * t)
    nsym = n // sps
    rx = wave.samples.reshape(nsym, sps)
    corr_i = (rx * ref_i.reshape(nsym, sps)).sum(axis=1)
    if scheme == "BASK":
        # threshold at half the noiseless "on" correlation per interval
        ref_on = cfg.carrier_amplitude * ref_i
        e_on = (ref_on.reshape(nsym, sps) * ref_i.reshape(nsym, sps)).sum(axis=1)
        bits = (corr_i > 0.5 * e_on).astype(np.uint8)
    elif scheme == "BPSK":
        bits = (corr_i > 0).astype(np.uint8)
    else:
        ref_q = -np.sin(2.0 * np.pi * cfg.carrier_freq * t)
        corr_q = (rx * ref_q.reshape(nsym, sps)).sum(axis=1)
        bits = np.empty(2 * nsym, dtype=np.uint8)
        bits[0::2] = corr_q < 0
        bits[1::2] = corr_i < 0
    if wave.pad_bits:
        bits = bits[:bits.size - wave.pad_bits]
    return bits
