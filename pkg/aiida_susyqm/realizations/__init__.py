from .general import (
    ADTable,
    Supercharges,
    build_ad_table,
    check_conditions,
    compute_B,
    general_hamiltonian,
    general_supercharges,
    hamiltonian_forms,
    ladder_combinations,
    verify_ss4,
)
from .one_dim import Realization1D, log_derivative_half, monomial_superpotential, realize_1d
from .three_dim import FieldOperator, Realization3D, parse_gauge, realize_3d

__all__ = [
    "ADTable",
    "FieldOperator",
    "Realization1D",
    "Realization3D",
    "Supercharges",
    "build_ad_table",
    "check_conditions",
    "compute_B",
    "general_hamiltonian",
    "general_supercharges",
    "hamiltonian_forms",
    "ladder_combinations",
    "log_derivative_half",
    "monomial_superpotential",
    "parse_gauge",
    "realize_1d",
    "realize_3d",
    "verify_ss4",
]
