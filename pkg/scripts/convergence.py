"""Compare the direct sequence l(sat(I^n)/I^n) d!/n^d with the exact epsilon.

    python scripts/convergence.py --ns 12 24 36 48 --csv convergence.csv
"""

import argparse
import csv
import sys

from epsdens.core import RingDescriptor, ideal_from_strings
from epsdens.density import epsilon_sequence, epsilon_value

R3 = RingDescriptor(3, ("X", "Y", "Z"))
CASES = {
    "four_gens": ["X^2*Y^3", "X^3*Y^2", "X*Y^2*Z^4", "X*Y^3*Z^3"],
    "edge": ["X*Y", "Y*Z", "Z*X"],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[12, 24, 36, 48, 60])
    ap.add_argument("--csv", help="write rows here instead of stdout")
    args = ap.parse_args()
    fh = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["ideal", "n", "value", "epsilon", "value_approx", "relative_gap_approx"])
    for name, gens in CASES.items():
        I = ideal_from_strings(gens, R3)
        eps = epsilon_value(R3, I)
        for n, val in zip(args.ns, epsilon_sequence(I, args.ns)):
            w.writerow([name, n, str(val), str(eps), f"{float(val):.12g}", f"{float((val - eps) / eps):.12g}"])
    if args.csv:
        fh.close()


if __name__ == "__main__":
    main()
