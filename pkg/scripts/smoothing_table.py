"""Smoothing and overall Gauss-Seidel factors on the kH ladder, both shifts."""

import argparse

from helmmg.analysis import factor_table


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--points", type=int, default=257)
    args = p.parse_args()
    print(f"{'kH':>8} {'beta':>5} {'smoothing':>10} {'overall':>10}")
    for r in factor_table([0.0, 0.15625, 0.3125, 0.625, 1.25, 2.5, 5.0], (0.0, 0.5), args.points):
        print(f"{r['kH']:8.5g} {r['beta']:5.2g} {r['smoothing']:10.4f} {r['overall']:10.4f}")
