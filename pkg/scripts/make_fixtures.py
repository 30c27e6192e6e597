#!/usr/bin/env python3
"""Regenerate the stand-in datasets under fixtures/.

Cost and accuracy tables are synthetic: published hardware tables for
these adders exist only as plots, so the values here are constructed to be
consistent with the aggregate savings/filter statements the workbench is
validated against. Run from the repo root: python3 scripts/make_fixtures.py
"""

import json
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from acslab.netlist import lower_or_text, ripple_carry_text  # noqa: E402

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")

# name, area_um2, power_uW, corrupt, ber per (BASK, BPSK, QPSK)
COMM = [
    ("cla_12u",     400.0, 210.0,   0, 0.17235, 0.15418, 0.16102),
    ("add12u_2UF",  372.1, 188.2,   0, 0.17421, 0.15601, 0.16297),
    ("add12u_39N",  343.9, 171.6,   0, 0.19244, 0.17922, 0.18870),
    ("add12u_0UZ",  305.2, 150.3,   1, 0.49766, 0.50211, 0.49913),
    ("add12u_0Z5",  312.6, 158.9,   1, 0.50012, 0.49871, 0.50075),
    ("add12u_0LN",  334.8, 163.2,   1, 0.49950, 0.50138, 0.49704),
    ("add12u_187",  314.0, 144.858, 0, 0.17389, 0.15556, 0.16236),
    ("add12u_0ZP",  287.4, 133.5,   0, 0.18011, 0.16702, 0.17433),
    ("add12u_103",  265.8, 118.4,   0, 0.24811, 0.22903, 0.23319),
    ("add12u_0AF",  231.5, 124.7,   0, 0.19323, 0.18106, 0.19012),
    ("add12u_28B",  182.7, 96.3,    1, 0.49837, 0.50093, 0.49958),
    ("add12u_4NT",  278.3, 136.8,   1, 0.50214, 0.49902, 0.50142),
    ("add12u_50U",  297.5, 147.1,   1, 0.49781, 0.50057, 0.49887),
    ("add12u_0C9",  308.1, 152.8,   0, 0.18677, 0.17345, 0.18091),
    ("add12u_0AZ",  243.0, 127.9,   0, 0.26190, 0.24071, 0.24850),
]

# name, area_um2, power_uW, accuracy_pct
NLP = [
    ("cla_16u",     800.0, 300.0,  100.0),
    ("add16u_1A5",  655.0, 231.7,  100.0),
    ("add16u_0GN",  638.5, 225.4,  100.0),
    ("add16u_0TA",  629.3, 219.9,  100.0),
    ("add16u_15Q",  617.2, 214.5,  100.0),
    ("add16u_162",  604.8, 208.3,  100.0),
    ("add16u_0NT",  596.2, 201.2,  100.0),
    ("add16u_110",  585.0, 194.41, 100.0),
    ("add16u_0NL",  592.4, 189.6,  88.89),
    ("add16u_2J7",  512.3, 154.7,  57.2),
    ("add16u_45K",  497.6, 137.2,  49.81),
    ("add16u_0HH",  533.9, 128.3,  41.3),
    ("add16u_0B9",  438.1, 83.6,   33.94),
    ("add16u_3QV",  455.0, 101.2,  28.6),
    ("add16u_5E8",  470.7, 112.4,  22.17),
    ("add16u_07T",  402.2, 44.195, 16.663),
]

POS_MODEL = {
    "tags": ["DET", "NOUN", "VERB", "ADJ"],
    "vocab": ["the", "a", "cat", "dog", "fox", "birds", "barks", "sees",
              "quick", "brown"],
    "initial": {"DET": 0.7, "NOUN": 0.15, "VERB": 0.05, "ADJ": 0.1},
    "transition": {
        "DET":  {"DET": 0.025, "NOUN": 0.6, "VERB": 0.025, "ADJ": 0.35},
        "NOUN": {"DET": 0.2, "NOUN": 0.2, "VERB": 0.5, "ADJ": 0.1},
        "VERB": {"DET": 0.4, "NOUN": 0.4, "VERB": 0.1, "ADJ": 0.1},
        "ADJ":  {"DET": 0.025, "NOUN": 0.55, "VERB": 0.025, "ADJ": 0.4},
    },
    "emission": {
        "DET":  {"the": 0.6, "a": 0.4},
        "NOUN": {"cat": 0.25, "dog": 0.25, "fox": 0.25, "birds": 0.25},
        "VERB": {"barks": 0.5, "sees": 0.5},
        "ADJ":  {"quick": 0.5, "brown": 0.5},
    },
}

POS_SENTENCES = [
    "the cat",
    "a dog barks",
    "the quick brown fox sees birds",
]
POS_GOLD = [
    "DET NOUN",
    "DET NOUN VERB",
    "DET ADJ ADJ NOUN VERB NOUN",
]

_WORDS = ("signal channel noise decoder state metric survivor path symbol "
          "carrier sample phase branch trellis register window budget power "
          "area design trade off sweep run seed frame block source sink "
          "message text data word bit stream rate code gain loss margin "
          "filter mixer lattice search depth cost table entry probe bench").split()


def corpus_653(seed=7, words=653):
    rng = np.random.default_rng(seed)
    out = []
    n = 0
    while n < words:
        sent_len = int(rng.integers(6, 14))
        sent_len = min(sent_len, words - n)
        picks = [_WORDS[int(i)] for i in rng.integers(0, len(_WORDS), sent_len)]
        picks[0] = picks[0].capitalize()
        out.append(" ".join(picks) + ".")
        n += sent_len
    return "\n".join(out) + "\n"


def write(path, text):
    full = os.path.join(ROOT, path)
    os.makedirs(os.path.dirname(full), exist_ok=True)
    with open(full, "w", encoding="utf-8") as fh:
        fh.write(text)
    print("wrote", os.path.relpath(full))


def main():
    lines = ["adder,width,area_um2,power_uW"]
    for name, area, power, _c, *_b in COMM:
        lines.append(f"{name},12,{area},{power}")
    write("comm_costs.csv", "\n".join(lines) + "\n")

    lines = ["adder,modulation,ber,corrupt_flag"]
    for mi, mod in enumerate(("BASK", "BPSK", "QPSK")):
        for name, _a, _p, corrupt, *bers in COMM:
            lines.append(f"{name},{mod},{bers[mi]},{corrupt}")
    write("comm_accuracy.csv", "\n".join(lines) + "\n")

    lines = ["adder,modulation,ber,corrupt_flag"]
    for mi, mod in enumerate(("BASK", "BPSK", "QPSK")):
        for name, _a, _p, corrupt, *bers in COMM:
            if corrupt or name == "cla_12u":
                continue
            lines.append(f"{name},{mod},{bers[mi]},0")
    write("comm_ber_8.csv", "\n".join(lines) + "\n")

    lines = ["adder,width,area_um2,power_uW"]
    for name, area, power, _acc in NLP:
        lines.append(f"{name},16,{area},{power}")
    write("nlp_costs.csv", "\n".join(lines) + "\n")

    lines = ["adder,accuracy_pct,tokens"]
    for name, _a, _p, acc in NLP:
        lines.append(f"{name},{acc},11")
    write("nlp_accuracy.csv", "\n".join(lines) + "\n")

    write("hmm_pos.json", json.dumps(POS_MODEL, indent=2) + "\n")
    write("pos_sentences.txt", "\n".join(POS_SENTENCES) + "\n")
    write("pos_gold.txt", "\n".join(POS_GOLD) + "\n")
    write("corpus_653.txt", corpus_653())

    write(os.path.join("netlists", "rca_4.net"), ripple_carry_text(4))
    write(os.path.join("netlists", "rca_12.net"), ripple_carry_text(12))
    write(os.path.join("netlists", "loa_8_4.net"), lower_or_text(8, 4))


if __name__ == "__main__":
    main()
