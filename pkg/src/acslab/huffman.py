"""Huffman source coding over arbitrary symbol alphabets.

Construction is deterministic: initial nodes are inserted in sorted symbol
order and ties in the merge heap break on insertion counter, so the same
frequency map always yields the same codebook.
"""

import heapq
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError


def char_frequencies(text):
    """Per-character occurrence counts of a text."""
    freqs = {}
    for ch in text:
        freqs[ch] = freqs.get(ch, 0) + 1
    return freqs


def huffman_build(freqs):
    """Build an optimal prefix codebook from symbol -> weight.

    Weights must be non-negative and not all zero; a single-symbol alphabet
    gets the codeword "0".
    """
    if not freqs:
        raise InputError("empty alphabet")
    items = sorted(freqs.items(), key=lambda kv: kv[0])
    for _, w in items:
        if w < 0:
            raise InputError("negative symbol weight")
    if not any(w > 0 for _, w in items):
        raise InputError("all symbol weights are zero")
    if len(items) == 1:
        return HuffmanCodebook({items[0][0]: "0"})
    counter = 0
    heap = []
    for sym, w in items:
        heapq.heappush(heap, (w, counter, sym))
        counter += 1
    while len(heap) > 1:
        w0, _, n0 = heapq.heappop(heap)
        w1, _, n1 = heapq.heappop(heap)
        heapq.heappush(heap, (w0 + w1, counter, (n0, n1)))
        counter += 1
    root = heap[0][2]
    codes = {}

    def assign(node, prefix):
        if isinstance(node, tuple):
            assign(node[0], prefix + "0")
            assign(node[1], prefix + "1")
        else:
            codes[node] = prefix

    assign(root, "")
    return HuffmanCodebook(codes)


@dataclass(frozen=True)
class HuffmanCodebook:
    codes: dict

    @cached_property
    def _tree(self):
        tree = {}
        for sym, code in self.codes.items():
            node = tree
            for bit in code[:-1]:
                node = node.setdefault(int(bit), {})
            node[int(code[-1])] = sym
        return tree

    def kraft_sum(self):
        return sum(2.0 ** -len(c) for c in self.codes.values())

    def encode(self, text):
        """Text -> bit array. Unknown symbols raise InputError."""
        try:
            s = "".join(self.codes[ch] for ch in text)
        except KeyError as exc:
            raise InputError(f"symbol {exc.args[0]!r} not in codebook") from exc
        return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")

    def decode(self, bits):
        """Bit array -> (text, truncated).

        truncated is True when the stream ends mid-codeword or reaches a
        branch the code tree does not define (possible on corrupted input
        to a degenerate single-symbol code); the prefix decoded so far is
        returned either way. Never raises on bit content.
        """
        out = []
        tree = self._tree
        node = tree
        for bit in np.asarray(bits, dtype=np.uint8).tolist():
            nxt = node.get(bit)
            if nxt is None:
                return "".join(out), True
            if isinstance(nxt, dict):
                node = nxt
            else:
                out.append(nxt)
                node = tree
        return "".join(out), node is not tree
