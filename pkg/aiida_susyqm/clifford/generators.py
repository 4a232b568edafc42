"""Matrix representations of the Clifford families used by the N=4 construction.

All entries are 0, +-1, +-i so every product is exact in floating point.
Index conventions (1-based in names, 0-based in arrays):

* ``dirac_c40``: C_m = [[0, i s_m], [-i s_m, 0]] for m = 1..3, C_4 = [[0, I], [I, 0]]
* ``xi_c03``:    three real antisymmetric matrices with negative metric
* ``wp``:        the three antisymmetric matrices commuting with ``xi_c03``
* ``pauli_tau``: the standard Pauli matrices
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Literal

import numpy as np

Family = Literal["dirac_c40", "xi_c03", "wp", "pauli_tau"]

I2 = np.eye(2, dtype=complex)
SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
# i * sigma_2, the 2x2 real antisymmetric unit
J2 = np.array([[0, 1], [-1, 0]], dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


def block(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]])


def unit(i: int, j: int, dim: int = 4) -> np.ndarray:
    """Matrix unit E_ij (1-based)."""
    m = np.zeros((dim, dim), dtype=complex)
    m[i - 1, j - 1] = 1
    return m


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    name: str
    gens: tuple
    metric: tuple
    kind: Literal["hermitian", "antisymmetric"] = "hermitian"
    dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", self.gens[0].shape[0])

    def __getitem__(self, index: int) -> np.ndarray:
        """1-based access, C[1] .. C[n]."""
        return self.gens[index - 1]

    def __len__(self):
        return len(self.gens)

    def replace(self, index: int, matrix: np.ndarray, name: str = None) -> "GeneratorSet":
        gens = list(self.gens)
        gens[index - 1] = np.asarray(matrix, dtype=complex)
        return GeneratorSet(name or f"{self.name}*", tuple(gens), self.metric, self.kind)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "metric": list(self.metric),
            "dim": self.dim,
            "generators": [
                [[[entry.real, entry.imag] for entry in row] for row in g] for g in self.gens
            ],
        }


def _dirac_c40() -> tuple:
    c = [block(Z2, 1j * s, -1j * s, Z2) for s in SIGMA]
    c.append(block(Z2, I2, I2, Z2))
    return tuple(c)


def _xi_c03() -> tuple:
    return (
        block(J2, Z2, Z2, J2),
        block(Z2, SIGMA[2], -SIGMA[2], Z2),
        block(Z2, SIGMA[0], -SIGMA[0], Z2),
    )


def _wp() -> tuple:
    return (
        block(Z2, J2, J2, Z2),
        block(Z2, I2, -I2, Z2),
        block(-J2, Z2, Z2, J2),
    )


_FAMILIES = {
    "dirac_c40": (_dirac_c40, (1, 1, 1, 1), "hermitian"),
    "xi_c03": (_xi_c03, (-1, -1, -1), "antisymmetric"),
    "wp": (_wp, (-1, -1, -1), "antisymmetric"),
    "pauli_tau": (lambda: SIGMA, (1, 1, 1), "hermitian"),
}


def build_generators(family: Family) -> GeneratorSet:
    if family not in _FAMILIES:
        raise ValueError(f"Generator family {family} is not supported.")
    factory, metric, kind = _FAMILIES[family]
    gens = tuple(np.array(g, dtype=complex) for g in factory())
    return GeneratorSet(family, gens, metric, kind)


def levi_civita(n: int = 4) -> np.ndarray:
    """Totally antisymmetric tensor with eps[0, 1, ..., n-1] = +1."""
    eps = np.zeros((n,) * n)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


def hat_products(c: GeneratorSet) -> tuple:
    """Triple products entering the D-part of the supercharges.

    hat C_1 = C2C3C4, hat C_2 = -C3C4C1, hat C_3 = C1C2C4, hat C_4 = -C1C2C3.
    """
    return (
        c[2] @ c[3] @ c[4],
        -(c[3] @ c[4] @ c[1]),
        c[1] @ c[2] @ c[4],
        -(c[1] @ c[2] @ c[3]),
    )


def format_matrix(m: np.ndarray) -> str:
    """Text grid with exact-looking entries (0, 1, -i, 1/2, ...)."""

    def entry(z: complex) -> str:
        re_, im_ = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
        if im_ == 0:
            return f"{re_:g}"
        if re_ == 0:
            return {1.0: "i", -1.0: "-i"}.get(im_, f"{im_:g}i")
        return f"{re_:g}{im_:+g}i"

    cells = [[entry(z) for z in row] for row in np.asarray(m)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)
