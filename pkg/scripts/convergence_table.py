"""Print truncation errors of the group, cosine and sine expansions against degree.

    python scripts/convergence_table.py --K 64 --t 1.0
"""

import argparse

import numpy as np

from hermexp import expansion_engine as ee
from hermexp import operator_models as om


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--K", type=int, default=64)
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--decay", type=float, default=3.1, help="x_k = k^-decay")
    args = parser.parse_args()

    k = np.arange(1, args.K + 1, dtype=float)
    x = k**-args.decay
    degrees = [8, 16, 32, 64, 128, 256]
    group = ee.error_curve(om.DiagonalGroup(k), x, args.t, degrees, "group")
    cos = ee.error_curve(om.DiagonalCosine(k), x, args.t, degrees, "cosine")
    sin = ee.error_curve(om.DiagonalCosine(k), x, args.t, degrees, "sine")
    print(f"{'m':>5} {'group':>12} {'cosine':>12} {'sine':>12}")
    for row in zip(degrees, group.errors, cos.errors, sin.errors):
        print(f"{row[0]:>5} {row[1]:12.3e} {row[2]:12.3e} {row[3]:12.3e}")
    for name, curve in (("group", group), ("cosine", cos), ("sine", sin)):
        print(f"{name} fitted slope {ee.rate_fit(curve).slope:.3f}")


if __name__ == "__main__":
    main()
