#!/usr/bin/env python3
"""Example plot for a decosim sweep CSV.

Documentation, not a supported component: shows how the pinned sweep
columns map onto the usual coverage/hops-vs-p charts.

    decosim sweep --scenario scenarios/sweep_demo.json --out sweep.csv
    python3 scripts/plot_sweep.py sweep.csv sweep.png
"""

import csv
import sys


def read_rows(path):
    rows = []
    with open(path, newline="") as f:
        for line in csv.DictReader(
            (l for l in f if not l.startswith("#")), delimiter=","
        ):
            if line["mean_coverage"] == "":
                continue  # failed cell
            rows.append(line)
    return rows


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 1
    rows = read_rows(sys.argv[1])
    xs = [float(r["param_p"] or r["param_f"]) for r in rows]
    coverage = [float(r["mean_coverage"]) for r in rows]
    coverage_sd = [float(r["sd_coverage"]) for r in rows]
    hops = [float(r["mean_hops"]) for r in rows]

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.errorbar(xs, coverage, yerr=coverage_sd, marker="o")
    ax1.set_xlabel("dissemination probability / fanout")
    ax1.set_ylabel("mean coverage")
    ax1.set_ylim(0, 1.05)
    ax2.plot(xs, hops, marker="s", color="tab:orange")
    ax2.set_xlabel("dissemination probability / fanout")
    ax2.set_ylabel("mean hops to first receipt")
    fig.tight_layout()
    fig.savefig(sys.argv[2], dpi=150)
    print(f"wrote {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
