"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (printed in the terminal summary
by conftest) and then asserts, so a failure shows both places.
"""

import random
import time
from fractions import Fraction

import pytest

from epsdens.core import Monomial, RingDescriptor, default_names, ideal_from_strings, minimalize
from epsdens.density import (
    closure_invariance_check,
    density_report,
    epsilon_sequence,
    harvest_saturated_bidegrees,
    ordinary_density,
    ordinary_run,
    reference_fixture,
)
from epsdens.errors import InputError
from epsdens.hilbert import fit_binumerator
from epsdens.ideals import detect_saturation_stabilization, saturate, saturated_power
from epsdens.polys import Poly, format_fraction
from epsdens.qpfit import fit_chamber
from epsdens.surd import QuadraticSurd
from epsdens.vpf import PhiOracle, RestrictedCone, VPMatrix, chambers, cone_contains, period, phi_brute, phi_brute_box

RESULTS: list[str] = []
SEED = 20261016
R3 = RingDescriptor(3, ("X", "Y", "Z"))
EDGE = ["X*Y", "Y*Z", "Z*X"]
FOUR_GENS = ["X^2*Y^3", "X^3*Y^2", "X*Y^2*Z^4", "X*Y^3*Z^3"]


def I3(*gens):
    return ideal_from_strings(list(gens), R3)


def fmt(xs):
    return "[" + ", ".join(format_fraction(x) for x in xs) + "]"


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_criterion_01_three_generator_density():
    with Timer() as t:
        f = ordinary_density(R3, I3("X", "Y^2", "Z^3"))
    want = [Poly(), Poly([9, -18, 9]), Poly([-27, 18]), Poly([0, 0, 3])]
    ok = f.breakpoints == [1, 2, 3] and f.pieces == want and t.seconds < 120
    record(1, ok, f"{f}, {t.seconds:.1f}s (limit 120s)")


@pytest.mark.parametrize("d", [2, 3])
def test_criterion_02_squares(d):
    ring = RingDescriptor(d, default_names(d))
    with Timer() as t:
        f = ordinary_density(ring, ideal_from_strings([f"{x}^2" for x in ring.names], ring))
    ok = (
        f.breakpoints == [2]
        and f.pieces[0].is_zero
        and f.point_values == [d]
        and f.pieces[1] == Poly.monomial(d - 1, d)
        and f(Fraction(2)) == d
        and not f.continuity()[0]["continuous"]
        and t.seconds < 60
    )
    record(2, ok, f"d={d}: value {f.point_values[0]} at 2, tail {f.pieces[1]}, {t.seconds:.1f}s (limit 60s)")


def test_criterion_03_quotient_steps():
    ring = RingDescriptor(3, ("X", "Y", "Z"), I3(*EDGE))
    with Timer() as t:
        f = ordinary_density(ring, ideal_from_strings(["X", "Y^2", "Z^3"], ring))
    steps = [f(x) for x in (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(7, 2))]
    jumps = [c["at"] for c in f.continuity() if not c["continuous"]]
    ok = steps == [0, 1, 2, 3] and jumps == [1, 2, 3] and t.seconds < 60
    record(3, ok, f"steps {fmt(steps)}, jumps at {fmt(jumps)}, {t.seconds:.1f}s (limit 60s)")


def test_criterion_04_saturated_example():
    I = I3(*FOUR_GENS)
    with Timer() as t:
        sat = saturate(I)
        spec = detect_saturation_stabilization(I)
        B = fit_binumerator(spec, [(6, 1), (4, 1)], 3, (40, 10))
        rep = density_report(R3, I)
        bideg = set(harvest_saturated_bidegrees(I, 4))
    f = rep.f_saturated
    ok = (
        sat == I3("X^2*Y^2", "X*Y^2*Z^3")
        and spec.stabilization.c == 1
        and B.as_dict() == {(0, 0): 1, (7, 1): -1}
        and bideg == {(4, 1), (6, 1)}
        and f.breakpoints == [4, 6]
        and f.pieces == [Poly(), Poly([72, -36, Fraction(9, 2)]), Poly([18, -18, 3])]
        and rep.alpha == 4
        and t.seconds < 180
    )
    record(4, ok, f"sat {sat}, c={spec.stabilization.c}, numerator {B.as_dict()}, f_sat {f}, alpha {rep.alpha}, {t.seconds:.1f}s (limit 180s)")


def test_criterion_05_edge_ideal():
    I = I3(*EDGE)
    with Timer() as t:
        sq = saturated_power(I, 2)
        rep = density_report(R3, I)
    fs, fe = rep.f_saturated, rep.f_epsilon
    eps_piece = fe.pieces[fe.piece_index(Fraction(7, 4))]
    ok = (
        sq == I3("X^2*Y^2", "Y^2*Z^2", "Z^2*X^2", "X*Y*Z")
        and fs.breakpoints == [Fraction(3, 2), 2]
        and fs.pieces == [Poly(), Poly([27, -36, 12]), Poly([-9, 0, 3])]
        and eps_piece == Poly([27, -36, 12])
        and all(fe(x) == 0 for x in (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(4)))
        and rep.epsilon == Fraction(1, 2)
        and rep.alpha == Fraction(3, 2)
        and rep.beta.value == 2
        and rep.beta.exact
        and rep.intersection_numbers == [1, 0, -3]
        and t.seconds < 180
    )
    record(
        5,
        ok,
        f"eps {rep.epsilon}, alpha {rep.alpha}, beta {rep.beta.value} (exact={rep.beta.exact}), "
        f"(H^2, HE, E^2) = {rep.intersection_numbers}, {t.seconds:.1f}s (limit 180s)",
    )


def test_criterion_06_quasi_polynomial_chambers():
    run = ordinary_run(R3, I3("X^3*Y", "X*Z^2", "Y^4*Z"))
    lower = [f.qp.distinct_lower_parts() for f in run.fits]
    quasi = [f.chamber.interval_json() for f in run.fits[:-1] if f.qp.distinct_lower_parts() >= 2]
    last_poly = run.fits[-1].qp.is_polynomial()
    ok = bool(quasi) and last_poly
    record(6, ok, f"distinct lower parts per chamber {lower}, residue-dependent chambers {quasi}, last chamber polynomial: {last_poly}")


def random_matrices(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        M = VPMatrix(rng.randint(0, 3), tuple((rng.randint(0, 4), rng.randint(1, 4)) for _ in range(rng.randint(1, 3))))
        try:
            period(M)
        except InputError:
            continue  # rank one: no two-dimensional chamber complex
        out.append(M)
    return out


def test_criterion_07_vpf_suite():
    box = (60, 30)
    points = mismatches = 0
    brute_spot = 0
    rng = random.Random(SEED + 1)
    with Timer() as t:
        for M in random_matrices(SEED, 25):
            h, D = period(M), M.size - 2
            oracle = PhiOracle(M)
            B = phi_brute_box(M, *box)
            for _ in range(20):
                m, n = rng.randint(0, box[0]), rng.randint(0, box[1])
                brute_spot += int(B[m, n] != phi_brute(M, m, n))
            for ch in chambers(M):
                fit = fit_chamber(oracle, ch, h, D, range(9), validation="cells", common_top=False, validate_box=box)
                cone = RestrictedCone(ch, fit.offset_found)
                for n in range(box[1] + 1):
                    for m in range(box[0] + 1):
                        if cone_contains(cone, (m, n)):
                            points += 1
                            mismatches += int(fit.qp(m, n) != B[m, n])
    ok = mismatches == 0 and brute_spot == 0 and points > 0 and t.seconds < 300
    record(7, ok, f"25 matrices, {points} box points in offset chambers, {mismatches} mismatches, {t.seconds:.1f}s (limit 300s)")


def random_ideals(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        v = rng.choice([2, 3])
        ring = RingDescriptor(v, default_names(v))
        gens = [tuple(rng.randint(0, 4) for _ in range(v)) for _ in range(rng.randint(2, 4))]
        if any(sum(g) == 0 for g in gens):
            continue
        I = minimalize([Monomial(g) for g in gens], ring)
        if len(I.generators) < 2 or any(I == J for _, J in out):
            continue
        out.append((ring, I))
    return out


def test_criterion_08_closure_invariance():
    reports = [closure_invariance_check(ring, I) for ring, I in random_ideals(SEED, 10)]
    bad = [r.ideal for r in reports if not r.ok]
    changed = sum(r.ideal != r.closure for r in reports)
    record(8, not bad, f"10 ideals ({changed} not integrally closed), disagreements: {bad or 'none'}")


@pytest.mark.parametrize("gens, eps", [(FOUR_GENS, Fraction(6)), (EDGE, Fraction(1, 2))])
def test_criterion_09_convergence(gens, eps):
    rep = density_report(R3, I3(*gens))
    seq = epsilon_sequence(I3(*gens), [24, 36, 48])
    gaps = [abs(s - eps) for s in seq]
    ok = rep.epsilon == eps and gaps[0] >= gaps[1] >= gaps[2] and gaps[2] < Fraction(15, 100) * eps
    record(9, ok, f"eps {rep.epsilon}, direct values {[f'{float(s):.4f}' for s in seq]}, rel. gap at 48 {float(gaps[2] / eps):.3f}")


def test_criterion_10_fixtures():
    nag = reference_fixture("nagata", 4)
    # closed form: the antiderivative of 3x^2 - 48 is x^3 - 48x
    nag_ok = nag.integrate(Fraction(4), Fraction(5)) == (125 - 240) - (64 - 192) == 13
    cut = reference_fixture("cutkosky")
    (b,) = cut.breakpoints
    F = lambda x: 198 * x**3 - 108 * x**2 + 18 * x
    closed = F(b + 1) - F(b)
    cut_ok = cut.integrate(b, b + 1) == closed == QuadraticSurd(198, 18, 3)
    cont_ok = all(c["continuous"] for c in nag.continuity() + cut.continuity())
    cont_ok = cont_ok and nag.one_sided(0) == (0, 0) and cut.one_sided(0) == (0, 0)
    record(10, nag_ok and cut_ok and cont_ok, f"nagata(4) integral 13: {nag_ok}, cutkosky integral 198+18*sqrt(3): {cut_ok}, continuity: {cont_ok}")
