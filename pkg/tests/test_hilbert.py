import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from epsdens.core import Monomial, RingDescriptor, default_names, ideal_from_strings, unit_ideal, zero_ideal
from epsdens.errors import FitFailure, UnverifiedRegionError
from epsdens.hilbert import (
    HilbertNumerator1,
    fit_binumerator,
    graded_dim,
    length_oracle,
    multiply_by_denominator,
    numerator_of_quotient,
    oracle_for,
    ring_multiplicity,
)
from epsdens.ideals import detect_saturation_stabilization, ideal_power, ordinary_spec
from strategies import ideals

R2 = RingDescriptor(2, ("X", "Y"))
R3 = RingDescriptor(3, ("X", "Y", "Z"))
EDGE = ["X*Y", "Y*Z", "Z*X"]
FOUR_GENS = ["X^2*Y^3", "X^3*Y^2", "X*Y^2*Z^4", "X*Y^3*Z^3"]


def count_in(I, m):
    return sum(1 for e in itertools.product(range(m + 1), repeat=I.var_count) if sum(e) == m and Monomial(e) in I)


@pytest.mark.parametrize(
    "ring, gens, numerator",
    [
        (R2, ["X^2"], {0: 1, 2: -1}),
        (R3, ["1"], {}),
        (R3, EDGE, {0: 1, 2: -3, 3: 2}),
    ],
)
def test_numerator(ring, gens, numerator):
    assert numerator_of_quotient(ring, ideal_from_strings(gens, ring)).as_dict() == numerator


def test_edge_numerator_matches_standard_monomial_count():
    I = ideal_from_strings(EDGE, R3)
    N = numerator_of_quotient(R3, I)
    for m in range(7):
        assert N.dim(m) == comb(m + 2, 2) - count_in(I, m)


@pytest.mark.parametrize(
    "gens, m, expected",
    [(["1"], 4, 15), (["X", "Y^2", "Z^3"], 2, 4), (EDGE, 0, 0), (["X"], -1, 0)],
)
def test_graded_dim(gens, m, expected):
    assert graded_dim(R3, ideal_from_strings(gens, R3), m) == expected


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_squares_on_the_diagonal(d, n):
    ring = RingDescriptor(d, default_names(d))
    I = ideal_power(ideal_from_strings([f"{x}^2" for x in ring.names], ring), n)
    assert graded_dim(ring, I, 2 * n) == comb(n + d - 1, d - 1)


def test_quotient_ring_dimension_and_multiplicity():
    ring = RingDescriptor(3, ("X", "Y", "Z"), ideal_from_strings(EDGE, R3))
    assert ring_multiplicity(ring) == 3
    assert ring_multiplicity(R3) == 1
    N = numerator_of_quotient(R3, ideal_from_strings(EDGE, R3))
    assert (N.dimension(), N.multiplicity()) == (1, 3)


@given(ideals(top=3), st.integers(0, 7))
def test_graded_dim_matches_enumeration(I, m):
    assert graded_dim(I.ring, I, m) == count_in(I, m)


@given(ideals(top=3))
def test_numerator_reproduces_series(I):
    # (1-t)^v * sum dim (A/I)_m t^m equals the numerator, checked coefficientwise
    N = numerator_of_quotient(I.ring, I)
    v = I.var_count
    top = 12
    dims = [comb(m + v - 1, v - 1) - count_in(I, m) for m in range(top + 1)]
    series = np.array(dims, dtype=object)
    for _ in range(v):
        series[1:] = series[1:] - series[:-1].copy()
    coeffs = N.as_dict()
    assert all(series[k] == coeffs.get(k, 0) for k in range(top + 1))


def test_length_oracle_examples():
    spec_four = detect_saturation_stabilization(ideal_from_strings(FOUR_GENS, R3), 12)
    assert length_oracle(spec_four, 4, 1) == 1
    spec_edge = detect_saturation_stabilization(ideal_from_strings(EDGE, R3), 12)
    assert length_oracle(spec_edge, 3, 2) == 1
    I = ideal_from_strings(["X", "Y^2"], R3)
    assert [length_oracle(ordinary_spec(I), m, 0) for m in range(5)] == [comb(m + 2, 2) for m in range(5)]


def test_length_oracle_matches_powers():
    I = ideal_from_strings(["X", "Y^2", "Z^3"], R3)
    table = oracle_for(ordinary_spec(I)).grid(9, 3)
    for n in range(4):
        P = ideal_power(I, n)
        for m in range(10):
            assert table[m, n] == count_in(P, m)


def test_length_oracle_in_quotient_ring():
    ring = RingDescriptor(3, ("X", "Y", "Z"), ideal_from_strings(EDGE, R3))
    I = ideal_from_strings(["X", "Y^2", "Z^3"], ring)
    # (I^n)_m in A: monomials of I^n of degree m that are not in the quotient
    for n in range(3):
        P = ideal_power(ideal_from_strings(["X", "Y^2", "Z^3"], R3), n)
        for m in range(8):
            want = sum(
                1
                for e in itertools.product(range(m + 1), repeat=3)
                if sum(e) == m and Monomial(e) in P and Monomial(e) not in ring.quotient
            )
            assert length_oracle(ordinary_spec(I), m, n) == want


def test_length_oracle_is_monotone_in_m():
    I = ideal_from_strings(EDGE, R3)
    table = oracle_for(ordinary_spec(I)).grid(30, 8)
    for n in range(9):
        row = table[2 * n :, n]
        assert all(a <= b for a, b in zip(row, row[1:]))


def test_unverified_region_is_explicit():
    spec = detect_saturation_stabilization(ideal_from_strings(["X*Y", "Y*Z", "Z*X", "X^3*Y"], R3), 6)
    spec = type(spec)(spec.kind, spec.base, None, 6)
    with pytest.raises(UnverifiedRegionError):
        length_oracle(spec, 10, 7)


def test_binumerator_saturated_example():
    spec = detect_saturation_stabilization(ideal_from_strings(FOUR_GENS, R3), 12)
    B = fit_binumerator(spec, [(6, 1), (4, 1)], 3, (40, 10))
    assert B.as_dict() == {(0, 0): 1, (7, 1): -1}


def test_binumerator_trivial_filtration():
    B = fit_binumerator(ordinary_spec(zero_ideal(R2)), [], 2, (20, 10))
    assert B.as_dict() == {(0, 0): 1}
    B = fit_binumerator(ordinary_spec(unit_ideal(R2)), [(0, 1)], 2, (20, 10))
    assert B.as_dict() == {(0, 0): 1}


def test_binumerator_reproduces_box():
    I = ideal_from_strings(["X^2", "Y^2"], R2)
    spec = ordinary_spec(I)
    B = fit_binumerator(spec, [(2, 1), (2, 1)], 2, (30, 12))
    assert B.as_dict() == {(0, 0): 1, (4, 1): -1}
    # expanding numerator / denominator gives back the oracle on the box
    table = oracle_for(spec).grid(30, 12)
    P = np.zeros((31, 13), dtype=object)
    for (a, b), c in B.as_dict().items():
        P[a, b] = c
    assert (multiply_by_denominator(table, 2, [(2, 1), (2, 1)]) == P).all()


def test_binumerator_margin_failure():
    I = ideal_from_strings(["X^2", "Y^2"], R2)
    with pytest.raises(FitFailure):
        fit_binumerator(ordinary_spec(I), [(2, 1)], 2, (20, 8))


def test_numerator_dim_negative_is_zero():
    assert HilbertNumerator1.from_list([1, -1], 2).dim(-3) == 0
