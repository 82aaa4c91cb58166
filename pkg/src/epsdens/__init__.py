"""Exact density functions of monomial ideal filtrations."""

from .config import FitConfig
from .core import Monomial, MonomialIdeal, RingDescriptor, ideal_from_strings, maximal_ideal, minimalize
from .density import (
    PiecewisePolynomial,
    alpha_invariant,
    beta_invariant,
    closure_invariance_check,
    density_report,
    diagonal_multiplicity,
    epsilon_density,
    epsilon_sequence,
    epsilon_value,
    mixed_multiplicities,
    ordinary_density,
    reference_fixture,
    saturated_density,
)
from .errors import DimensionError, EpsdensError, FitFailure, InputError, StructuralError, UnverifiedRegionError
from .hilbert import graded_dim, length_oracle, numerator_of_quotient
from .ideals import detect_saturation_stabilization, integral_closure, saturate
from .surd import QuadraticSurd
from .vpf import VPMatrix, chambers, period, phi_brute, phi_table

__version__ = "0.1.0"
