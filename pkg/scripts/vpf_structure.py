"""Fit every chamber of random two-row partition functions and report their structure.

For each matrix: period, chambers, offset found, and whether the chamber
formula is a true polynomial or only a quasi-polynomial.  Every fit is
checked against direct enumeration on a box.

    python scripts/vpf_structure.py --count 25 --seed 20261016
"""

import argparse
import random
import time

from epsdens.errors import InputError
from epsdens.qpfit import fit_chamber
from epsdens.vpf import PhiOracle, RestrictedCone, VPMatrix, chambers, cone_contains, period, phi_brute_box


def random_matrices(seed, count, max_r=3, max_cols=3, top=4):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        # same draw order as the acceptance suite, so a seed names the same matrices
        r = rng.randint(0, max_r)
        M = VPMatrix(r, tuple((rng.randint(0, top), rng.randint(1, top)) for _ in range(rng.randint(1, max_cols))))
        try:
            period(M)
        except InputError:
            continue
        out.append(M)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=25)
    ap.add_argument("--seed", type=int, default=20261016)
    ap.add_argument("--box", type=int, nargs=2, default=(60, 30))
    args = ap.parse_args()
    box = tuple(args.box)
    total_bad = 0
    for M in random_matrices(args.seed, args.count):
        t0 = time.perf_counter()
        h = period(M)
        oracle, B = PhiOracle(M), phi_brute_box(M, *box)
        parts = []
        for ch in chambers(M):
            fit = fit_chamber(oracle, ch, h, M.size - 2, range(9), validation="cells", common_top=False, validate_box=box)
            cone = RestrictedCone(ch, fit.offset_found)
            bad = sum(
                fit.qp(m, n) != B[m, n]
                for n in range(box[1] + 1)
                for m in range(box[0] + 1)
                if cone_contains(cone, (m, n))
            )
            total_bad += bad
            kind = "poly" if fit.qp.is_polynomial() else f"quasi({fit.qp.distinct_lower_parts()})"
            lo, hi = ch.interval_json()
            parts.append(f"[{lo},{hi or 'inf'}] k={fit.k} {kind}" + (f" MISMATCH {bad}" if bad else ""))
        print(f"r={M.r} cols={list(M.columns)} h={h} {time.perf_counter() - t0:5.2f}s  " + "; ".join(parts))
    print(f"total mismatches against enumeration: {total_bad}")


if __name__ == "__main__":
    main()
