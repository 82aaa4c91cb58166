from fractions import Fraction

import pytest

from epsdens.config import FitConfig
from epsdens.core import RingDescriptor, default_names, ideal_from_strings
from epsdens.density import (
    PiecewisePolynomial,
    alpha_invariant,
    beta_invariant,
    closure_invariance_check,
    density_report,
    diagonal_multiplicity,
    epsilon_density,
    epsilon_sequence,
    epsilon_value,
    log_concavity_violations,
    mixed_multiplicities,
    ordinary_density,
    ordinary_run,
    reference_fixture,
    saturated_density,
    strictly_increasing_on,
)
from epsdens.errors import InputError
from epsdens.hilbert import ring_multiplicity
from epsdens.polys import Poly
from epsdens.surd import QuadraticSurd

R2 = RingDescriptor(2, ("X", "Y"))
R3 = RingDescriptor(3, ("X", "Y", "Z"))
EDGE = ["X*Y", "Y*Z", "Z*X"]
FOUR_GENS = ["X^2*Y^3", "X^3*Y^2", "X*Y^2*Z^4", "X*Y^3*Z^3"]


def I3(*gens):
    return ideal_from_strings(list(gens), R3)


@pytest.fixture(scope="module")
def edge_report():
    return density_report(R3, I3(*EDGE))


@pytest.fixture(scope="module")
def four_gens_report():
    return density_report(R3, I3(*FOUR_GENS))


def grid(lo, hi, step=Fraction(1, 8)):
    x, out = Fraction(lo), []
    while x <= hi:
        out.append(x)
        x += step
    return out


def test_three_generator_density():
    f = ordinary_density(R3, I3("X", "Y^2", "Z^3"))
    assert f.breakpoints == [1, 2, 3]
    assert f.pieces == [Poly(), Poly([9, -18, 9]), Poly([-27, 18]), Poly([0, 0, 3])]
    assert f.point_values == [0, 9, 27]
    assert all(c["continuous"] for c in f.continuity()[1:])


@pytest.mark.parametrize("d", [2, 3])
def test_squares_jump(d):
    ring = RingDescriptor(d, default_names(d))
    f = ordinary_density(ring, ideal_from_strings([f"{x}^2" for x in ring.names], ring))
    assert f.breakpoints == [2]
    assert f.pieces[0].is_zero
    assert f.pieces[1] == Poly.monomial(d - 1, d)
    assert f.point_values == [d]
    assert f(Fraction(2)) == d and f(Fraction(199, 100)) == 0


def test_quotient_ring_steps():
    ring = RingDescriptor(3, ("X", "Y", "Z"), I3(*EDGE))
    f = ordinary_density(ring, ideal_from_strings(["X", "Y^2", "Z^3"], ring))
    assert f.breakpoints == [1, 2, 3]
    assert f.pieces == [Poly(), Poly([1]), Poly([2]), Poly([3])]
    assert f.point_values == [1, 2, 3]
    assert not any(c["continuous"] for c in f.continuity())


def test_saturated_densities(edge_report, four_gens_report):
    f = four_gens_report.f_saturated
    assert f.breakpoints == [4, 6]
    assert f.pieces[1:] == [Poly([72, -36, Fraction(9, 2)]), Poly([18, -18, 3])]
    g = edge_report.f_saturated
    assert g.breakpoints == [Fraction(3, 2), 2]
    assert g.pieces[1:] == [Poly([27, -36, 12]), Poly([-9, 0, 3])]


def test_primary_ideal_has_full_saturated_density():
    f = saturated_density(R3, I3("X", "Y^2", "Z^3"))
    assert f.pieces[-1] == Poly([0, 0, 3])
    # saturations are the whole ring, so epsilon is the ordinary multiplicity e(I) = 1 * 2 * 3
    assert epsilon_value(R3, I3("X", "Y^2", "Z^3")) == 6
    assert epsilon_value(R3, I3("X^2", "Y^2", "Z^2")) == 8


def test_epsilon(edge_report, four_gens_report):
    assert edge_report.epsilon == Fraction(1, 2)
    feps = edge_report.f_epsilon
    assert feps(Fraction(7, 4)) == 3 * (2 * Fraction(7, 4) - 3) ** 2
    assert feps(Fraction(1)) == 0 and feps(Fraction(5, 2)) == 0
    assert four_gens_report.epsilon == four_gens_report.f_epsilon.integrate(Fraction(0), Fraction(7))
    assert epsilon_density(R3, I3(*EDGE)).pieces == feps.pieces


def test_epsilon_agrees_with_direct_sequence(four_gens_report):
    seq = epsilon_sequence(I3(*FOUR_GENS), [12, 24])
    eps = four_gens_report.epsilon
    assert abs(seq[1] - eps) < abs(seq[0] - eps)


def test_invariants(edge_report, four_gens_report):
    assert (edge_report.alpha, edge_report.beta.value, edge_report.beta.exact) == (Fraction(3, 2), 2, True)
    assert four_gens_report.alpha == 4
    R = RingDescriptor(2, ("X", "Y"))
    I = ideal_from_strings(["X"], R)
    assert alpha_invariant(R, I) == 1
    assert beta_invariant(R, I).value == 1


@pytest.mark.parametrize("report", ["edge_report", "four_gens_report"])
def test_report_properties(report, request):
    rep = request.getfixturevalue(report)
    fo, fs, fe = rep.f_ordinary, rep.f_saturated, rep.f_epsilon
    d1, dl = fo.breakpoints[0], fo.breakpoints[-1]
    pts = grid(0, dl + 2)
    # dominance and tail agreement
    assert all(fs(x) >= fo(x) for x in pts)
    assert fs.pieces[-1] == fo.pieces[-1]
    # support of f_eps inside (alpha, d_l]
    assert all(fe(x) == 0 for x in pts if x <= rep.alpha or x > dl)
    # continuity of f_sat everywhere and of f_ord past d_1
    assert all(c["continuous"] for c in fs.continuity())
    assert all(c["continuous"] for c in fo.continuity() if c["at"] != d1)
    assert 0 < rep.alpha <= d1 and rep.beta.value <= dl
    assert strictly_increasing_on(fs, [x for x in pts if x > rep.alpha])
    assert log_concavity_violations(fs, rep.alpha, 3, ring_multiplicity(R3), pts) == []


def test_equal_degree_lower_bound(edge_report):
    # generated in degree 2
    assert edge_report.epsilon >= (2 - edge_report.alpha) ** 3 * ring_multiplicity(R3)


def test_diagonal_multiplicity():
    I = I3("X", "Y^2", "Z^3")
    run = ordinary_run(R3, I)
    assert diagonal_multiplicity(R3, I, 5, 2, run=run) == 24
    assert diagonal_multiplicity(R3, I, 1, 2, run=run) == 0
    # at a breakpoint the value comes from the diagonal fit itself
    assert diagonal_multiplicity(R3, I, 3, 1, run=run) == 9
    with pytest.raises(InputError):
        diagonal_multiplicity(R3, I, 0, 1, run=run)


def test_mixed_multiplicities(edge_report):
    e, inter = mixed_multiplicities(R3, I3("X", "Y^2", "Z^3"))
    assert inter == [1, 0, 0]
    assert e == [0, 0, 1]
    assert edge_report.intersection_numbers == [1, 0, -3]
    assert edge_report.mixed_multiplicities == [-3, 0, 1]


@pytest.mark.parametrize(
    "ring, gens",
    [(R2, ["X^2", "Y^2"]), (R3, EDGE), (R2, ["X^3", "X*Y", "Y^5"])],
)
def test_closure_invariance(ring, gens):
    report = closure_invariance_check(ring, ideal_from_strings(gens, ring))
    assert report.ok, report.to_json()


def test_closure_report_names_the_closure():
    report = closure_invariance_check(R2, ideal_from_strings(["X^2", "Y^2"], R2))
    assert report.closure == "(X^2, X*Y, Y^2)"
    assert closure_invariance_check(R3, I3(*EDGE)).closure == str(I3(*EDGE))


def test_nagata_fixture():
    f = reference_fixture("nagata", 4)
    assert f(Fraction(5)) == 27
    assert f.one_sided(0) == (0, 0)
    assert f.integrate(Fraction(4), Fraction(5)) == 13
    with pytest.raises(InputError):
        reference_fixture("nagata", 3)


def test_cutkosky_fixture():
    f = reference_fixture("cutkosky")
    (b,) = f.breakpoints
    assert b == QuadraticSurd(6, 1, 3, 33)
    assert f.one_sided(0) == (0, 0)
    assert f.integrate(b, b + 1) == QuadraticSurd(198, 18, 3)
    assert f.to_json()["breakpoints"] == [{"type": "surd", "a": 6, "b": 1, "c": 3, "q": 33}]


def test_piecewise_difference_merges_breakpoints():
    f = PiecewisePolynomial([Fraction(1)], [Poly(), Poly([0, 1])], [0], 2)
    g = PiecewisePolynomial([Fraction(2)], [Poly(), Poly([0, 1])], [0], 2)
    h = f - g
    assert h.breakpoints == [1, 2]
    assert h(Fraction(3, 2)) == Fraction(3, 2) and h(Fraction(3)) == 0


def test_thread_count_does_not_change_results():
    a = density_report(R3, I3(*EDGE), FitConfig(threads=1)).to_json()
    b = density_report(R3, I3(*EDGE), FitConfig(threads=4)).to_json()
    assert a == b
