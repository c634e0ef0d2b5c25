"""Dualized coset algebras of symmetric-space sigma models, built and checked exactly.

Pipeline: root system -> structure constants -> solvable algebra ``s`` ->
dualized algebra -> adjoint representation and coset matrix -> field equations.
"""

from .adjoint import (
    FieldConfiguration,
    adjoint_of,
    coset_matrix,
    coset_matrix_inverse,
    verify_homomorphism,
)
from .chevalley import (
    StructureConstants,
    compute_structure_constants,
    verify_cycle_identity,
    verify_quadruple_identity,
)
from .coset import ClosureError, SolvableAlgebra, build_solvable, validate_closure
from .dualized import DualizedAlgebra, build_dualized, ftilde, gtilde
from .field_equations import (
    cartan_form,
    expand_second_order,
    fd_check_cartan_form,
    first_order_system,
    omega_capital,
    omega_lowercase,
)
from .report import Report
from .roots import Root, RootSystem, RootSystemError, build_root_system, cartan_matrix

__all__ = [
    "ClosureError",
    "DualizedAlgebra",
    "FieldConfiguration",
    "Report",
    "Root",
    "RootSystem",
    "RootSystemError",
    "SolvableAlgebra",
    "StructureConstants",
    "adjoint_of",
    "build",
    "build_dualized",
    "build_root_system",
    "build_solvable",
    "cartan_form",
    "cartan_matrix",
    "compute_structure_constants",
    "coset_matrix",
    "coset_matrix_inverse",
    "expand_second_order",
    "fd_check_cartan_form",
    "first_order_system",
    "ftilde",
    "gtilde",
    "omega_capital",
    "omega_lowercase",
    "validate_closure",
    "verify_cycle_identity",
    "verify_homomorphism",
    "verify_quadruple_identity",
]


def build(family: str, rank: int | None = None, ncp=None, cartan_indices=None) -> DualizedAlgebra:
    """Shortcut: ``build("G2")`` or ``build("A", 3, ncp=[(1, 0, 0)])``."""
    rs = build_root_system(family, rank)
    sc = compute_structure_constants(rs)
    return build_dualized(build_solvable(rs, sc, ncp, cartan_indices))
