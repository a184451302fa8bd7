"""Exact Gross-lattice toolkit for quaternion maximal orders.

Builds maximal orders of the definite rational quaternion algebra ramified
at {p, infinity}, extracts their Gross lattices, computes normalized
successive minimal bases, classifies the corresponding supersingular curves
from lattice data, and cross-validates everything against a finite-field
supersingularity oracle.
"""

from .classify import Classification, classify_type, embedded_discriminants
from .cm import closed_form_gram, cm_row, cm_rows, recompute_ne
from .gramgross import GramCandidate, gram_gross, quadratic_residue_precheck
from .lattice import (
    GrossLattice,
    MinimalBasis,
    MinimaTriple,
    gross_lattice,
    minimal_basis,
    minima_triple,
    orthogonalization,
    short_vectors,
)
from .oracle import deuring_polynomial, spine_count, supersingular_j_set
from .orders import (
    QuaternionIdeal,
    QuaternionOrder,
    TypeRecord,
    enumerate_types,
    left_ideals_of_norm,
    reduced_discriminant,
    right_order,
    saturate_to_maximal,
    standard_maximal_order,
)
from .quat import QuaternionAlgebra, QuaternionElement
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "GramCandidate",
    "GrossLattice",
    "MinimaTriple",
    "MinimalBasis",
    "QuaternionAlgebra",
    "QuaternionElement",
    "QuaternionIdeal",
    "QuaternionOrder",
    "TypeRecord",
    "classify_type",
    "closed_form_gram",
    "cm_row",
    "cm_rows",
    "deuring_polynomial",
    "embedded_discriminants",
    "enumerate_types",
    "gram_gross",
    "gross_lattice",
    "left_ideals_of_norm",
    "minima_triple",
    "minimal_basis",
    "orthogonalization",
    "quadratic_residue_precheck",
    "recompute_ne",
    "reduced_discriminant",
    "right_order",
    "run_verify",
    "saturate_to_maximal",
    "short_vectors",
    "spine_count",
    "standard_maximal_order",
    "supersingular_j_set",
]
