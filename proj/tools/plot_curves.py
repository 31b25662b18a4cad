#!/usr/bin/env python3
"""Plot goodput / normalized-rate / bit-energy curves from `twrn sweep` CSVs.

Usage:
    twrn sweep --mode af --snr-db 0,10,20 --output af.csv
    twrn sweep --mode df --snr-db 0,10,20 --output df.csv
    python3 tools/plot_curves.py af.csv df.csv --metric goodput -o goodput.png

Convenience only; the CSV files are the contract.
"""

import argparse
import csv
import sys
from collections import defaultdict

METRICS = {
    "goodput": ("goodput_bpshz", "goodput (bits/sec/Hz)", False),
    "normalized-rate": ("normalized_rate", "eta / R", False),
    "eb": ("eb_renewal", "average bit energy (J/bit)", True),
    "eb-paper": ("eb_paper", "average bit energy (J/bit)", True),
}


def load(path):
    curves = defaultdict(list)
    with open(path) as f:
        for row in csv.DictReader(f):
            curves[(row["mode"], row["snr_db"])].append(row)
    return curves


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csvs", nargs="+")
    ap.add_argument("--metric", choices=sorted(METRICS), default="goodput")
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed; nothing plotted", file=sys.stderr)
        return 1

    column, ylabel, logy = METRICS[args.metric]
    fig, ax = plt.subplots(figsize=(7, 5))
    for path in args.csvs:
        for (mode, snr), rows in sorted(load(path).items()):
            pts = [(float(r["rate_bpshz"]), float(r[column]))
                   for r in rows if r[column] not in ("", "inf")]
            pts.sort()
            style = "-" if mode == "af" else "--"
            ax.plot([p[0] for p in pts], [p[1] for p in pts], style,
                    label=f"{mode.upper()} {snr} dB")
    ax.set_xlabel("transmission rate R (bits/sec/Hz)")
    ax.set_ylabel(ylabel)
    if logy:
        ax.set_yscale("log")
    ax.legend()
    ax.grid(True, alpha=0.3)
    out = args.output or f"{args.metric}.png"
    fig.tight_layout()
    fig.savefig(out, dpi=140)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
