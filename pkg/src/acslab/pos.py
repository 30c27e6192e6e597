"""HMM part-of-speech tagging with a fixed-point approximate-ACS Viterbi.

Probabilities are mapped to unsigned 16-bit costs c = round(min(-ln p,
clamp) * scale); the tagger then runs min-cost Viterbi where every
addition goes through a pluggable 16-bit AdderModel with saturation at
2^16 - 1 and subtract-min normalization per step. float_viterbi is the
double-precision max-probability oracle.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError, ParameterError

# emission floor applied to out-of-vocabulary words (and zero-probability
# emissions in the float oracle, for consistency with the quantized path)
OOV_EPSILON = 1e-6

TAG_WIDTH = 16


@dataclass(frozen=True)
class HmmModel:
    """Tags, vocabulary and row-stochastic probability tables."""

    tags: tuple
    vocab: tuple
    initial: np.ndarray      # (T,)
    transition: np.ndarray   # (T, T)
    emission: np.ndarray     # (T, V)

    def __post_init__(self):
        T, V = len(self.tags), len(self.vocab)
        object.__setattr__(self, "initial", np.asarray(self.initial, dtype=np.float64))
        object.__setattr__(self, "transition", np.asarray(self.transition, dtype=np.float64))
        object.__setattr__(self, "emission", np.asarray(self.emission, dtype=np.float64))
        if self.initial.shape != (T,) or self.transition.shape != (T, T) \
                or self.emission.shape != (T, V):
            raise ConfigError("probability table shapes inconsistent with tags/vocab")
        if (self.initial < 0).any() or (self.transition < 0).any() \
                or (self.emission < 0).any():
            raise ConfigError("negative probability")
        rows = [self.initial.sum(), *self.transition.sum(axis=1),
                *self.emission.sum(axis=1)]
        for r in rows:
            if abs(r - 1.0) > 1e-9:
                raise ConfigError(f"probability row sums to {r!r}, not 1")

    @classmethod
    def from_dict(cls, d):
        tags = tuple(d["tags"])
        vocab = tuple(d["vocab"])
        initial = np.array([d["initial"].get(t, 0.0) for t in tags])
        transition = np.array([[d["transition"].get(ti, {}).get(tj, 0.0)
                                for tj in tags] for ti in tags])
        emission = np.array([[d["emission"].get(t, {}).get(w, 0.0)
                              for w in vocab] for t in tags])
        return cls(tags, vocab, initial, transition, emission)

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _cost(p, scale, clamp):
    with np.errstate(divide="ignore"):
        c = np.where(p > 0, -np.log(np.maximum(p, 1e-300)), np.inf)
    return np.rint(np.minimum(c, clamp) * scale).astype(np.int64)


@dataclass(frozen=True)
class QuantizedHmm:
    """HmmModel with negative-log costs quantized to unsigned 16-bit."""

    tags: tuple
    vocab: tuple
    initial: np.ndarray
    transition: np.ndarray
    emission: np.ndarray
    scale: float
    clamp: float
    oov_cost: int

    def word_index(self, word):
        try:
            return self.vocab.index(word)
        except ValueError:
            return -1


def quantize_hmm(hmm, scale=1024.0, clamp=32.0):
    """Quantize probabilities to costs round(min(-ln p, clamp) * scale);
    zero probabilities map to the clamp cost."""
    if scale <= 0:
        raise ParameterError("scale must be positive")
    if clamp * scale >= 1 << TAG_WIDTH:
        raise ParameterError(
            f"clamp*scale = {clamp * scale} does not fit in {TAG_WIDTH} bits")
    oov = int(np.rint(min(-np.log(OOV_EPSILON), clamp) * scale))
    return QuantizedHmm(
        hmm.tags, hmm.vocab,
        _cost(hmm.initial, scale, clamp),
        _cost(hmm.transition, scale, clamp),
        _cost(hmm.emission, scale, clamp),
        scale, clamp, oov)


def _emission_cost_column(qhmm, word):
    wi = qhmm.word_index(word)
    if wi < 0:
        return np.full(len(qhmm.tags), qhmm.oov_cost, dtype=np.int64)
    return qhmm.emission[:, wi]


def tag(qhmm, sentence, adder):
    """Min-cost Viterbi tag sequence with all additions through `adder`.

    Ties break toward the lowest tag index at every compare and at the
    final state selection.
    """
    if adder.width != TAG_WIDTH:
        raise ConfigError(
            f"tagging needs a {TAG_WIDTH}-bit adder, got width {adder.width}")
    if not sentence:
        raise InputError("empty sentence")
    sat = (1 << TAG_WIDTH) - 1
    T = len(qhmm.tags)

    def sat_add(a, b):
        return np.minimum(adder.evaluate_many(a, b), sat)

    delta = sat_add(qhmm.initial, _emission_cost_column(qhmm, sentence[0]))
    delta = delta - delta.min()
    backptr = []
    for word in sentence[1:]:
        em = _emission_cost_column(qhmm, word)
        # inner[t', t] = delta[t'] (+) trans[t', t] (+) em[t]
        inner = sat_add(np.repeat(delta, T), qhmm.transition.reshape(-1))
        total = sat_add(inner, np.tile(em, T)).reshape(T, T)
        choice = np.argmin(total, axis=0)
        backptr.append(choice)
        delta = total[choice, np.arange(T)]
        delta = delta - delta.min()
    state = int(np.argmin(delta))
    path = [state]
    for choice in reversed(backptr):
        state = int(choice[state])
        path.append(state)
    path.reverse()
    return [qhmm.tags[s] for s in path]


def float_viterbi(hmm, sentence):
    """Double-precision log-domain max-probability path (oracle).

    Zero probabilities score -inf; out-of-vocabulary words use the same
    emission floor as the quantized path. Ties break toward the lowest
    tag index.
    """
    if not sentence:
        raise InputError("empty sentence")
    T = len(hmm.tags)
    vocab_index = {w: i for i, w in enumerate(hmm.vocab)}

    def log_em(word):
        wi = vocab_index.get(word, -1)
        if wi < 0:
            return np.full(T, np.log(OOV_EPSILON))
        with np.errstate(divide="ignore"):
            return np.log(hmm.emission[:, wi])

    with np.errstate(divide="ignore"):
        log_init = np.log(hmm.initial)
        log_tr = np.log(hmm.transition)
    score = log_init + log_em(sentence[0])
    backptr = []
    for word in sentence[1:]:
        cand = score[:, None] + log_tr
        choice = np.argmax(cand, axis=0)
        backptr.append(choice)
        score = cand[choice, np.arange(T)] + log_em(word)
    state = int(np.argmax(score))
    path = [state]
    for choice in reversed(backptr):
        state = int(choice[state])
        path.append(state)
    path.reverse()
    return [hmm.tags[s] for s in path]


def accuracy(predicted, gold):
    """Token accuracy in percent."""
    if len(predicted) != len(gold):
        raise InputError(
            f"length mismatch: {len(predicted)} predicted vs {len(gold)} gold")
    if not gold:
        raise InputError("empty tag sequences")
    hits = sum(1 for p, g in zip(predicted, gold) if p == g)
    return 100.0 * hits / len(gold)
