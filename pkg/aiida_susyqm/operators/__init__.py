from .fields import SAMPLE_POINTS, SpinorField, standard_profiles, standard_test_family
from .residuals import RESIDUAL_THRESHOLD, ResidualReport, field_residual, identity_residual
from .SpinorOperator import (
    MAX_ORDER,
    SpinorOperator,
    apply,
    formal_adjoint,
    matrix_operator,
    op_algebra,
    scalar,
)

__all__ = [
    "MAX_ORDER",
    "RESIDUAL_THRESHOLD",
    "SAMPLE_POINTS",
    "ResidualReport",
    "SpinorField",
    "SpinorOperator",
    "apply",
    "field_residual",
    "formal_adjoint",
    "identity_residual",
    "matrix_operator",
    "op_algebra",
    "scalar",
    "standard_profiles",
    "standard_test_family",
]
