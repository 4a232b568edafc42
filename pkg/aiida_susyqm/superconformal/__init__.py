from .ladder import (
    LadderState,
    SpectrumTable,
    ZeroMode,
    ZeroModeReport,
    closed_form_state,
    energy_map,
    expected_energies,
    formal_zero_modes,
    integrate_exponential,
    ladder_spectrum,
    lambda_index,
    realization_zero_modes,
    t3_levels,
    zero_modes,
)
from .systems import (
    X3_LABELS,
    Y3_LABELS,
    SCSystem,
    build_system,
    conformal,
    conformal_supercharges,
    dilatation,
    verify_closure,
)

__all__ = [
    "X3_LABELS",
    "Y3_LABELS",
    "LadderState",
    "SCSystem",
    "SpectrumTable",
    "ZeroMode",
    "ZeroModeReport",
    "build_system",
    "closed_form_state",
    "conformal",
    "conformal_supercharges",
    "dilatation",
    "energy_map",
    "expected_energies",
    "formal_zero_modes",
    "integrate_exponential",
    "ladder_spectrum",
    "lambda_index",
    "realization_zero_modes",
    "t3_levels",
    "verify_closure",
    "zero_modes",
]
