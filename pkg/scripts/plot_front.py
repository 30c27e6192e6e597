#!/usr/bin/env python3
"""Render a DSE report CSV as a 3-axis scatter with the front highlighted.

Usage: python3 scripts/plot_front.py report.csv [out.png]
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main(argv):
    if not 2 <= len(argv) <= 3:
        print(__doc__)
        return 2
    path = argv[1]
    out = argv[2] if len(argv) == 3 else path.rsplit(".", 1)[0] + ".png"
    rows = list(csv.DictReader(open(path, encoding="utf-8")))
    if not rows:
        print("empty report")
        return 1
    metric = rows[0]["metric"]
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(111, projection="3d")
    for on_front, color, label in ((False, "tab:gray", "dominated"),
                                   (True, "tab:red", "pareto front")):
        sel = [r for r in rows if bool(int(r["pareto"])) == on_front]
        if not sel:
            continue
        ax.scatter([float(r["value"]) for r in sel],
                   [float(r["area_um2"]) for r in sel],
                   [float(r["power_uW"]) for r in sel],
                   c=color, label=label, s=40)
        for r in sel:
            if bool(int(r["pareto"])):
                ax.text(float(r["value"]), float(r["area_um2"]),
                        float(r["power_uW"]), r["adder"], fontsize=7)
    ax.set_xlabel(metric)
    ax.set_ylabel("area (um^2)")
    ax.set_zlabel("power (uW)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    print("wrote", out)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
