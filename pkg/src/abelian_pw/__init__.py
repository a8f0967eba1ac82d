"""Exact and numerical checks on the cohomology of rank-r Higgs moduli over a
g-dimensional abelian variety.

Both moduli spaces are symmetric products, so their cohomology is the
S_r-invariant part of a tensor power of an exterior algebra. The submodules
build that ring, its two filtrations, the mixed Hodge polynomial, the
Lefschetz operator, local homology of the sphere quotient, and a floating-point
model of the rank-one correspondence.
"""

from .errors import DomainError, LatticeError, ResourceLimitError, UsageError
from .filtration_tables import BigradedTable, closed_form_table, perverse_table, verify_p_equals_w, weight_table
from .graded_core import ExteriorMonomial, InvariantClass, InvariantWord, cup_invariants, invariant_basis
from .hodge_polynomials import curious_dual, hodge_tate_check, mixed_hodge_polynomial, verify_curious_duality
from .laurent import BiLaurent
from .lefschetz import LefschetzOperator, hyperplane_class, verify_hard_lefschetz
from .nah_geometry import Lattice, hitchin_embedding, retract_to_sphere_quotient, verify_nah_diagram, verify_roundtrip
from .reports import Report
from .torsion_topology import FGAbGroup, kunneth_pairs, manifold_obstruction, rational_sphere_check

__all__ = [
    "BiLaurent",
    "BigradedTable",
    "DomainError",
    "ExteriorMonomial",
    "FGAbGroup",
    "InvariantClass",
    "InvariantWord",
    "Lattice",
    "LatticeError",
    "LefschetzOperator",
    "Report",
    "ResourceLimitError",
    "UsageError",
    "closed_form_table",
    "cup_invariants",
    "curious_dual",
    "hitchin_embedding",
    "hodge_tate_check",
    "hyperplane_class",
    "invariant_basis",
    "kunneth_pairs",
    "manifold_obstruction",
    "mixed_hodge_polynomial",
    "perverse_table",
    "rational_sphere_check",
    "retract_to_sphere_quotient",
    "verify_curious_duality",
    "verify_hard_lefschetz",
    "verify_nah_diagram",
    "verify_p_equals_w",
    "verify_roundtrip",
    "weight_table",
]
