#!/usr/bin/env python3
"""Measure branch-and-bound effort against the copositivity margin.

Instances are matrices [[1, -b], [-b, 1]] scaled into the simplex: their
minimum over the simplex is (1 - b)/2, so driving b toward 1 shrinks the
margin toward the cone boundary.  Termination is only guaranteed for a
strictly positive margin; this family happens to certify even at b = 1
because the vertex products vanish exactly there, while boundary instances
whose products stay strictly negative on every subdivision run into the
depth budget and report StrictlyIndeterminate.
"""

import argparse
from fractions import Fraction

from copotensor import certify_copositivity
from copotensor.tensor import from_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-depth", type=int, default=32)
    parser.add_argument("--steps", type=int, default=10)
    args = parser.parse_args()

    print(f"{'b':>8} {'margin':>10} {'verdict':<22} {'depth':>6} {'simplices':>10}")
    for k in range(args.steps + 1):
        b = Fraction(k, args.steps)
        A = from_matrix([[Fraction(1), -b], [-b, Fraction(1)]])
        cert = certify_copositivity(A, max_depth=args.max_depth)
        margin = float((1 - b) / 2)
        print(f"{str(b):>8} {margin:>10.4f} {cert.verdict.value:<22} "
              f"{cert.stats.max_depth_reached:>6} "
              f"{cert.stats.simplices_processed:>10}")


if __name__ == "__main__":
    main()
