from .generators import (
    SIGMA,
    GeneratorSet,
    build_generators,
    format_matrix,
    hat_products,
    levi_civita,
    unit,
)
from .relations import (
    DerivedMatrices,
    RelationReport,
    check_relations,
    check_xi_structure,
    derive_matrices,
    duality_residual,
)

__all__ = [
    "SIGMA",
    "DerivedMatrices",
    "GeneratorSet",
    "RelationReport",
    "build_generators",
    "check_relations",
    "check_xi_structure",
    "derive_matrices",
    "duality_residual",
    "format_matrix",
    "hat_products",
    "levi_civita",
    "unit",
]
