"""Symbol ratios and Gauss-Seidel rates along w1 = w2 on the k = 40 ladder.

Writes one CSV per variant with columns depth, H, kH, omega_over_k, re_tau,
im_tau, mu, and prints a coarse summary of where |tau - 1| first exceeds 0.1
on each scale.
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from helmmg.analysis import figure_sweep


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--k", type=float, default=40.0)
    p.add_argument("--kh", type=float, default=0.3125, help="k*h on the finest scale")
    p.add_argument("--depths", default="1,2,3,4")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=257)
    p.add_argument("--out", default="results/figures")
    return p.parse_args(argv)


def first_departure(rows, tol=0.1):
    for r in rows:
        if abs(complex(r["re_tau"], r["im_tau"]) - 1) > tol:
            return r["omega_over_k"]
    return np.nan


if __name__ == "__main__":
    args = parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    depths = [int(d) for d in args.depths.split(",")]
    h = args.kh / args.k
    for variant in ("HLM", "SL"):
        rows = figure_sweep(args.k, h, depths, variant, args.beta, args.samples)
        path = out / f"figure_{variant}.csv"
        with path.open("w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        for d in depths:
            sub = [r for r in rows if r["depth"] == d]
            print(
                f"{variant:3s} kH={sub[0]['kH']:<7g} |w|/k in [{sub[0]['omega_over_k']:.3f}, "
                f"{sub[-1]['omega_over_k']:.3f}]  |tau-1|>0.1 from {first_departure(sub):.3f}  "
                f"max mu {max(r['mu'] for r in sub):.3f}"
            )
        print(f"wrote {path}")
