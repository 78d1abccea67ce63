#!/usr/bin/env python3
"""Regenerate the CSV fixtures in data/.

synthetic_cpi.csv   integer-valued monthly index with exactly 5% year-over-year growth
tightness.csv       monthly labor-market tightness v/u oscillating around 1
kinked_gaps.csv     gap pairs on a line with slope 0.9 when tight and 0.3 when slack
"""

import argparse
import math
import random
from pathlib import Path

YEARS = 10
START_YEAR = 2000


def cpi_rows():
    # 20^(N-y) * 21^y makes each year exactly 1.05 times the previous one while
    # staying an integer well below 2^53.
    for y in range(YEARS):
        for m in range(1, 13):
            value = 20 ** (YEARS - 1 - y) * 21 ** y * 50 * (40 + m)
            yield f"{START_YEAR + y}-{m:02d}", str(value)


def tightness_rows():
    for y in range(YEARS):
        for m in range(1, 13):
            k = y * 12 + m - 1
            theta = 1.0 + 0.4 * math.sin(2 * math.pi * k / 60.0)
            yield f"{START_YEAR + y}-{m:02d}", f"{theta:.6f}"


def kinked_rows(seed):
    rng = random.Random(seed)
    for q in range(80):
        year, quarter = 1960 + q // 4, q % 4
        x = -0.6 + 1.2 * (q + 0.5) / 80
        y = (0.9 if x > 0 else 0.3) * x + rng.gauss(0.0, 0.002)
        yield f"{year}-{3 * quarter + 1:02d}", f"{x:.6f}", f"{y:.6f}"


def write(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    write(args.out / "synthetic_cpi.csv", "date,value", cpi_rows())
    write(args.out / "tightness.csv", "date,value", tightness_rows())
    write(args.out / "kinked_gaps.csv", "date,tightness_gap,inflation_gap", kinked_rows(args.seed))


if __name__ == "__main__":
    main()
