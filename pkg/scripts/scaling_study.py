#!/usr/bin/env python3
"""Size-growth study: cycles C_n (n = 4..12) and 2xk grids (k = 2..5).

Prints program and circuit sizes per instance plus the ratio between
consecutive cycle sizes; everything stays under the desk-scale cap so all
rows come back verified.

Usage: python3 scripts/scaling_study.py [out.csv]
"""

import sys
import time

from tseitinkit import families as fam
from tseitinkit.compiler import pipeline
from tseitinkit.tseitin import unit_charge


def run(name, g, rows):
    start = time.monotonic()
    report, _, _ = pipeline(g, unit_charge(g.n, 0), tuple([0] * g.n))
    elapsed_ms = int(1000 * (time.monotonic() - start))
    rows.append(f"{name},{g.n},{g.m},{report.bp_size},{report.dnnf_size},{report.equivalence},{elapsed_ms}")
    print(rows[-1])
    return report


def main() -> int:
    rows = ["name,n,m,bp_size,dnnf_size,equivalence,elapsed_ms"]
    prev = None
    for n in range(4, 13):
        report = run(f"C{n}", fam.cycle(n), rows)
        if prev is not None:
            print(f"  cycle size ratio {report.dnnf_size / prev:.2f}")
        prev = report.dnnf_size
    for k in range(2, 6):
        run(f"grid2x{k}", fam.grid(2, k), rows)
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as fh:
            fh.write("\n".join(rows) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
