from dataclasses import dataclass, field

import numpy as np

from ..exceptions import EmptyTestSet
from .fields import SAMPLE_POINTS, SpinorField
from .SpinorOperator import SpinorOperator

RESIDUAL_THRESHOLD = 1e-10


@dataclass
class ResidualReport:
    identity_name: str
    per_test: list = field(default_factory=list)
    threshold: float = RESIDUAL_THRESHOLD

    @property
    def max_residual(self) -> float:
        return max(self.per_test, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.threshold

    def merge(self, other: "ResidualReport") -> "ResidualReport":
        return ResidualReport(self.identity_name, self.per_test + other.per_test, min(self.threshold, other.threshold))

    def to_json(self) -> dict:
        return {
            "identity_name": self.identity_name,
            "max_residual": self.max_residual,
            "per_test": list(self.per_test),
            "pass": self.passed,
        }

    def as_check(self) -> dict:
        return {
            "name": self.identity_name,
            "residual": self.max_residual,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def field_residual(
    lhs: SpinorOperator, rhs: SpinorOperator, test: SpinorField, difference=None, points=SAMPLE_POINTS
) -> float:
    """sup |(lhs - rhs) f| relative to the largest of sup |f|, sup |lhs f|, sup |rhs f|."""
    difference = lhs - rhs if difference is None else difference
    if difference.is_zero():
        return 0.0
    num = difference.apply(test).sup_norm(points)
    scale = max(test.sup_norm(points), lhs.apply(test).sup_norm(points), rhs.apply(test).sup_norm(points))
    return num / scale if scale > 0 else num


def identity_residual(
    lhs: SpinorOperator,
    rhs: SpinorOperator,
    tests: list,
    name: str = "identity",
    threshold: float = RESIDUAL_THRESHOLD,
    points=SAMPLE_POINTS,
) -> ResidualReport:
    if not tests:
        raise EmptyTestSet(f"no test fields given for {name}")
    difference = lhs - rhs
    per_test = [field_residual(lhs, rhs, t, difference, points) for t in tests]
    return ResidualReport(name, per_test, threshold)


def pointwise_residual(values: np.ndarray, reference: np.ndarray) -> float:
    scale = float(np.max(np.abs(reference))) if reference.size else 0.0
    num = float(np.max(np.abs(values))) if values.size else 0.0
    return num / scale if scale > 0 else num
