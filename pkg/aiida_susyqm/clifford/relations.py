from dataclasses import dataclass, field

import numpy as np

from ..base.utils import get_logger
from .generators import GeneratorSet, levi_civita, unit

logger = get_logger("clifford")


@dataclass
class RelationReport:
    """Named residuals of exact matrix identities; passes only at residual 0."""

    name: str
    residuals: dict = field(default_factory=dict)
    threshold: float = 0.0

    def add(self, label: str, residual: float):
        self.residuals[label] = float(residual)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.threshold

    def failures(self) -> list:
        return [label for label, r in self.residuals.items() if r > self.threshold]

    def checks(self) -> list:
        return [
            {"name": f"{self.name}.{label}", "residual": r, "threshold": self.threshold, "pass": r <= self.threshold}
            for label, r in self.residuals.items()
        ]


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def anticommutator(a, b):
    return a @ b + b @ a


def commutator(a, b):
    return a @ b - b @ a


def check_relations(gens: GeneratorSet) -> RelationReport:
    report = RelationReport(gens.name)
    eye = np.eye(gens.dim)
    clifford = 0.0
    for j in range(1, len(gens) + 1):
        for l in range(j, len(gens) + 1):  # noqa: E741
            target = 2 * gens.metric[j - 1] * eye if j == l else 0 * eye
            clifford = max(clifford, _max_abs(anticommutator(gens[j], gens[l]) - target))
    report.add("anticommutators", clifford)
    if gens.kind == "hermitian":
        report.add("hermiticity", max(_max_abs(g - g.conj().T) for g in gens.gens))
    else:
        report.add("antisymmetry", max(_max_abs(g + g.T) for g in gens.gens))
        report.add("reality", max(_max_abs(g.imag) for g in gens.gens))
    logger.debug(f"Clifford relations of {gens.name}: max residual {report.max_residual}")
    return report


def duality_residual(gens: GeneratorSet, orientation: int = -1) -> float:
    """max |sum_jk G_jk eps_jkmn + 2 G_mn| over the family.

    ``orientation`` fixes eps_1234 = +-1; the shipped Xi family is
    anti-self-dual for eps_1234 = -1.
    """
    eps = orientation * levi_civita(4)
    residual = 0.0
    for g in gens.gens:
        contracted = np.einsum("jk,jkmn->mn", g, eps)
        residual = max(residual, _max_abs(contracted + 2 * g))
    return residual


def check_xi_structure(xi: GeneratorSet, wp: GeneratorSet, orientation: int = -1) -> RelationReport:
    report = RelationReport("xi_structure")
    eye = np.eye(xi.dim)
    report.add(
        "orthogonality",
        max(max(_max_abs(g.T @ g - eye), _max_abs(g.T + g)) for g in xi.gens),
    )
    report.add("duality", duality_residual(xi, orientation))
    report.add(
        "commutes_with_wp",
        max(_max_abs(commutator(a, b)) for a in xi.gens for b in wp.gens),
    )
    report.add("wp_antisymmetry", max(_max_abs(g + g.T) for g in wp.gens))
    return report


@dataclass(frozen=True, eq=False)
class DerivedMatrices:
    gamma: dict
    ladder: dict
    x_triple: tuple
    y_triple: tuple
    chirality: np.ndarray
    report: RelationReport

    def gamma_at(self, j: int, k: int) -> np.ndarray:
        return self.gamma[(j, k)]

    def c_plus(self, mu: int) -> np.ndarray:
        return self.ladder[("+", mu)]

    def c_minus(self, mu: int) -> np.ndarray:
        return self.ladder[("-", mu)]


def _so3_residual(t3, tp, tm) -> float:
    return max(
        _max_abs(commutator(t3, tp) - 2 * tp),
        _max_abs(commutator(t3, tm) + 2 * tm),
        _max_abs(commutator(tp, tm) - t3),
    )


def derive_matrices(c: GeneratorSet) -> DerivedMatrices:
    if c.dim != 4 or len(c) != 4:
        raise ValueError("derived matrices need the 4x4 C(4,0) representation")
    gamma = {
        (j, k): 0.25j * commutator(c[j], c[k]) for j in range(1, 5) for k in range(1, 5)
    }
    ladder = {
        ("+", 1): 0.5 * (c[1] + 1j * c[2]),
        ("-", 1): 0.5 * (c[1] - 1j * c[2]),
        ("+", 2): 0.5 * (c[3] + 1j * c[4]),
        ("-", 2): 0.5 * (c[3] - 1j * c[4]),
    }
    x_plus = -ladder[("+", 1)] @ ladder[("+", 2)]
    x_minus = ladder[("-", 1)] @ ladder[("-", 2)]
    y_plus = ladder[("-", 2)] @ ladder[("+", 1)]
    y_minus = -ladder[("+", 2)] @ ladder[("-", 1)]
    x_triple = (commutator(x_plus, x_minus), x_plus, x_minus)
    y_triple = (commutator(y_plus, y_minus), y_plus, y_minus)
    chirality = c[1] @ c[2] @ c[3] @ c[4]

    report = RelationReport("derived")
    eye = np.eye(4)
    report.add("gamma_antisymmetry", max(_max_abs(gamma[(j, k)] + gamma[(k, j)]) for (j, k) in gamma))
    report.add("gamma_hermitian", max(_max_abs(g - g.conj().T) for g in gamma.values()))
    report.add("gamma_traceless", max(abs(np.trace(g)) for g in gamma.values()))
    report.add("chirality_square", _max_abs(chirality @ chirality - eye))
    nilpotent = 0.0
    ladder_ac = 0.0
    adjoint = 0.0
    for mu in (1, 2):
        cp, cm = ladder[("+", mu)], ladder[("-", mu)]
        nilpotent = max(nilpotent, _max_abs(cp @ cp), _max_abs(cm @ cm))
        ladder_ac = max(ladder_ac, _max_abs(anticommutator(cp, cm) - eye))
        adjoint = max(adjoint, _max_abs(cp.conj().T - cm))
    report.add("ladder_nilpotent", nilpotent)
    report.add("ladder_anticommutator", ladder_ac)
    report.add("ladder_adjoint", adjoint)
    report.add("x_so3", _so3_residual(*x_triple))
    report.add("y_so3", _so3_residual(*y_triple))
    report.add("x3_diagonal", _max_abs(x_triple[0] - (unit(1, 1) - unit(2, 2))))
    report.add("y3_diagonal", _max_abs(y_triple[0] - (unit(3, 3) - unit(4, 4))))
    return DerivedMatrices(gamma, ladder, x_triple, y_triple, chirality, report)
