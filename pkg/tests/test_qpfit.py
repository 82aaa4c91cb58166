from fractions import Fraction

import numpy as np
import pytest

from epsdens.core import RingDescriptor, default_names, ideal_from_strings
from epsdens.errors import FitFailure, StructuralError
from epsdens.hilbert import oracle_for
from epsdens.ideals import ordinary_spec
from epsdens.polys import BiPoly, Poly
from epsdens.qpfit import diagonal_fit, fit_chamber
from epsdens.vpf import PhiOracle, VPMatrix, chambers, period

R2 = RingDescriptor(2, ("X", "Y"))
R3 = RingDescriptor(3, ("X", "Y", "Z"))


def staggered():
    I = ideal_from_strings(["X", "Y^2", "Z^3"], R3)
    M = VPMatrix(3, tuple((g.degree, 1) for g in I.generators))
    return oracle_for(ordinary_spec(I)), chambers(M), period(M)


class TableOracle:
    """Oracle from a closed-form function of (m, n)."""

    n_limit = None

    def __init__(self, fn):
        self.fn = fn

    def grid(self, m_max, n_max):
        return np.array([[self.fn(m, n) for n in range(n_max + 1)] for m in range(m_max + 1)], dtype=object)


def test_principal_ideal_closed_form():
    oracle = oracle_for(ordinary_spec(ideal_from_strings(["X"], R2)))
    (ch,) = chambers(VPMatrix(2, ((1, 1),)))
    fit = fit_chamber(oracle, ch, 1, 1)
    assert fit.qp.table[(0, 0)] == BiPoly({(1, 0): 1, (0, 1): -1, (0, 0): 1})
    assert fit.top == BiPoly({(1, 0): 1, (0, 1): -1})
    assert fit.density_piece == Poly([-2, 2])


def test_example_chambers():
    oracle, chs, h = staggered()
    assert h == 2
    pieces = [fit_chamber(oracle, ch, h, 2).density_piece for ch in chs]
    assert pieces == [Poly([9, -18, 9]), Poly([-27, 18]), Poly([0, 0, 3])]


def test_last_chamber_is_a_polynomial():
    oracle, chs, h = staggered()
    fit = fit_chamber(oracle, chs[-1], h, 2)
    assert fit.qp.is_polynomial()
    assert fit.holdout_report > 0
    # the fitted polynomial reproduces the oracle away from the fit rows
    lam, beta = fit.offset_found
    table = oracle.grid(60, 12)
    for n in range(int(beta), 13):
        for m in range(3 * n + int(lam) + 1, 61):
            assert fit.qp(m, n) == table[m, n]


def test_cell_and_full_validation_agree():
    oracle, chs, h = staggered()
    for ch in chs:
        a = fit_chamber(oracle, ch, h, 2, validation="full")
        b = fit_chamber(oracle, ch, h, 2, validation="cells")
        assert a.qp.table == b.qp.table


def test_residue_dependent_top_is_structural():
    oracle = TableOracle(lambda m, n: m * n if m % 2 == 0 else 2 * m * n)
    (ch,) = chambers(VPMatrix(1, ((1, 1),)))
    with pytest.raises(StructuralError):
        fit_chamber(oracle, ch, 2, 2)
    fit = fit_chamber(oracle, ch, 2, 2, common_top=False)
    assert fit.qp(7, 3) == 42


def test_fit_failure_reports_residuals():
    oracle = TableOracle(lambda m, n: m**3 + n)
    (ch,) = chambers(VPMatrix(1, ((1, 1),)))
    with pytest.raises(FitFailure) as info:
        fit_chamber(oracle, ch, 1, 2, offsets=[0, 1])
    diag = info.value.diagnostics
    assert diag["last_attempt"]["reason"] == "validation mismatch"
    assert diag["last_attempt"]["residuals"]


def test_diagonal_squares():
    ring = RingDescriptor(3, default_names(3))
    I = ideal_from_strings(["X^2", "Y^2", "Z^2"], ring)
    fit = diagonal_fit(oracle_for(ordinary_spec(I)), 2, 1, 2)
    assert fit.leading == Fraction(1, 2)
    assert fit.value == 1
    assert 3 * fit.value == 3


def test_diagonal_below_first_slope_vanishes():
    oracle, _, _ = staggered()
    fit = diagonal_fit(oracle, 1, 2, 2)
    assert fit.value == 0
    assert all(p.is_zero for p in fit.polys.values())


def test_diagonal_between_breakpoints():
    oracle, _, _ = staggered()
    fit = diagonal_fit(oracle, 5, 2, 2)
    assert fit.value == 24
    # same number from the fitted piece: q^(d-1) * p_j(p/q) / d
    assert Fraction(2) ** 2 * Poly([-27, 18])(Fraction(5, 2)) / 3 == 24


def test_diagonal_needs_reduced_slope():
    oracle, _, _ = staggered()
    with pytest.raises(ValueError):
        diagonal_fit(oracle, 4, 2, 2)


def test_huge_period_fails_fast():
    M = VPMatrix(1, ((0, 1), (1, 5000)))
    h = period(M)
    assert h == 5000
    with pytest.raises(FitFailure, match="too large"):
        fit_chamber(PhiOracle(M), chambers(M)[0], h, M.size - 2)
