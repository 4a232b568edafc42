from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..ring import QuasiPoly

# strictly inside every coefficient's domain of regularity
SAMPLE_POINTS = np.geomspace(0.25, 4.0, 20)


@dataclass(frozen=True, eq=False)
class SpinorField:
    components: tuple
    domain: Optional[str] = "half_line"

    @classmethod
    def basis(cls, f: QuasiPoly, index: int, dim: int, domain: Optional[str] = "half_line") -> "SpinorField":
        """``f`` in component ``index`` (1-based), zero elsewhere."""
        comps = [QuasiPoly.zero()] * dim
        comps[index - 1] = f
        return cls(tuple(comps), domain)

    @classmethod
    def scalar(cls, f: QuasiPoly, domain: Optional[str] = "half_line") -> "SpinorField":
        return cls((f,), domain)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> QuasiPoly:
        return self.components[index - 1]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def evaluate(self, xs=SAMPLE_POINTS) -> np.ndarray:
        return np.array([np.asarray(c.eval(xs), dtype=complex) for c in self.components])

    def sup_norm(self, xs=SAMPLE_POINTS) -> float:
        return float(np.max(np.abs(self.evaluate(xs)))) if self.components else 0.0

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        return SpinorField(tuple(a - b for a, b in zip(self.components, other.components)), self.domain)

    def __eq__(self, other):
        if not isinstance(other, SpinorField) or other.dim != self.dim:
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


def standard_profiles() -> tuple:
    """Scalar profiles of the shipped test family."""
    half = QuasiPoly.monomial(1.0, s="1/2", b="1/2")
    return (
        half,
        QuasiPoly.monomial(1.0, s="3/2", b="1/2"),
        QuasiPoly.monomial(1.0, s="5/2", b=2),
        QuasiPoly.polynomial({"1/2": 1.0, "5/2": 1.0}, b=1),
    )


def standard_test_family(dim: int = 4, domain: Optional[str] = "half_line") -> list:
    """Every standard profile in every spinor component: 4 * dim fields."""
    return [
        SpinorField.basis(profile, index, dim, domain)
        for profile in standard_profiles()
        for index in range(1, dim + 1)
    ]
