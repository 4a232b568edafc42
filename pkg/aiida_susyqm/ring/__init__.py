from .quasipoly import (
    Exponent,
    NormResult,
    QuasiPoly,
    Term,
    derivative,
    norm_squared,
    ring_ops,
    x_power,
)

__all__ = [
    "Exponent",
    "NormResult",
    "QuasiPoly",
    "Term",
    "derivative",
    "norm_squared",
    "ring_ops",
    "x_power",
]
