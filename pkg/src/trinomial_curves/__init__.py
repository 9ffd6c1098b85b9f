"""Exact point counts and error-term identities for trinomial plane curves
over finite fields, with genus computations and integer certificates."""

__version__ = "0.1.0"

from .exponent_lattice import (
    CokerGroup,
    CurveConstants,
    ExponentMatrix,
    coker,
    constants,
    element_order,
    smith_invariant_factors,
)
from .finite_field import FieldCtx, PrimePower, build_field, parse_prime_power
from .gauss import GaussWitness, cornacchia_enumerate, gauss_witness, project_count
from .genus import DeltaCase, GenusResult, compare_genera, delta, genus_closed_form, genus_via_deltas
from .law_verifier import LawReport, lagrange_bound, verify_family
from .diophantine import OptiResult, opti_max
from .point_counter import CurveFamily, D, count_full, count_star, make_family, n_table, n_value

__all__ = [
    "CokerGroup",
    "CurveConstants",
    "CurveFamily",
    "D",
    "DeltaCase",
    "ExponentMatrix",
    "FieldCtx",
    "GaussWitness",
    "GenusResult",
    "LawReport",
    "OptiResult",
    "PrimePower",
    "build_field",
    "coker",
    "compare_genera",
    "constants",
    "cornacchia_enumerate",
    "count_full",
    "count_star",
    "delta",
    "element_order",
    "gauss_witness",
    "genus_closed_form",
    "genus_via_deltas",
    "lagrange_bound",
    "make_family",
    "n_table",
    "n_value",
    "opti_max",
    "parse_prime_power",
    "project_count",
    "smith_invariant_factors",
    "verify_family",
]
