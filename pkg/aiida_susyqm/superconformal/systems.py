"""The two superconformal systems: W = k/x on the line and W = ωx on the half line."""

from dataclasses import dataclass, field
from math import sqrt
from typing import Literal, Optional

import numpy as np

from ..algebra import SO3_X, SO3_Y, AlgebraTable, ClosureReport
from ..algebra import verify_closure as verify_table
from ..base.utils import get_logger
from ..clifford import build_generators, derive_matrices
from ..exceptions import NonpositiveOmega
from ..operators import RESIDUAL_THRESHOLD, SpinorOperator, identity_residual, standard_test_family
from ..realizations import Realization1D, realize_1d
from ..ring import QuasiPoly

logger = get_logger("superconformal")

Which = Literal["example1", "example2"]

# diagonal of Y3 in the shipped representation, labels the four sectors
Y3_LABELS = (0, 0, 1, -1)
X3_LABELS = (1, -1, 0, 0)


def dilatation(domain: Optional[str] = None) -> SpinorOperator:
    """Scalar D = -1/4 {p, x}."""
    p = SpinorOperator.momentum(domain=domain)
    x = SpinorOperator.position(1, domain=domain)
    return p.anticommutator(x) * -0.25


def conformal(domain: Optional[str] = None) -> SpinorOperator:
    """Scalar K = x^2 / 2."""
    return SpinorOperator.multiplication(QuasiPoly.monomial(0.5, s=2), domain=domain)


def conformal_supercharges(k_op: SpinorOperator, q: dict) -> dict:
    """S±_μ = ±[K, Q±_μ], i.e. x times the p-carrying matrix of Q±_μ."""
    return {(s, mu): k_op.commutator(op) * (1 if s == "+" else -1) for (s, mu), op in q.items()}


def _triple_operators(triple: tuple, domain: str) -> tuple:
    return tuple(SpinorOperator.constant_matrix(m, domain) for m in triple)


@dataclass(frozen=True, eq=False)
class SCSystem:
    which: Which
    params: dict
    domain: str
    realization: Realization1D
    h: SpinorOperator
    q: dict
    d: SpinorOperator
    k: SpinorOperator
    s: dict
    triple_name: str
    triple: tuple
    extras: dict = field(default_factory=dict)

    @property
    def omega(self) -> float:
        return self.params["omega"]

    def label(self) -> str:
        key, value = next(iter(self.params.items()))
        return f"{self.which}({key}={value})"

    def sector(self, i: int) -> SpinorOperator:
        return self.h.entry(i, i)

    def sector_potential(self, i: int) -> QuasiPoly:
        return self.h.coefficient(0, i, i)

    def _ladder(self, prefix: str, ops: dict) -> dict:
        return {f"{prefix}{s}{mu}": op for (s, mu), op in ops.items()}

    def _triple_bindings(self) -> dict:
        return dict(zip((f"{self.triple_name}3", f"{self.triple_name}+", f"{self.triple_name}-"), self.triple))

    def bindings(self, table: str) -> dict:
        """Operators bound to the slots of the named table."""
        if table == "TLR":
            if self.which != "example2":
                raise ValueError("the T/L/R regrouping exists only for the W = ωx system")
            return {**self.extras["tlr"], **self._triple_bindings()}
        if table == "SS4":
            return {"H": self.h, **self._ladder("Q", self.q)}
        # the conformal tables of the oscillator are built on the ω-independent part
        h, q = self.h, self.q
        if self.which == "example2":
            h, q = self.extras["h0_dot"], self.extras["q_dot"]
        return {
            "H": h,
            "D": self.d,
            "K": self.k,
            **self._ladder("Q", q),
            **self._ladder("S", self.s),
            **self._triple_bindings(),
        }

    def so3_table(self) -> AlgebraTable:
        return SO3_X if self.triple_name == "X" else SO3_Y

    def decomposition_residual(self, tests: Optional[list] = None):
        """H̃ - (Ḣ + ω^2 K + ω Y3) on the test family."""
        if self.which != "example2":
            raise ValueError("the decomposition holds for the W = ωx system")
        tests = tests or standard_test_family(4, self.domain)
        omega = self.omega
        rhs = self.extras["h0_dot"] + self.k * omega**2 + self.triple[0] * omega
        return identity_residual(self.h, rhs, tests, "decomposition.H")

    def to_json(self) -> dict:
        return {
            "system": self.which,
            "params": dict(self.params),
            "domain": self.domain,
            "potentials": [self.sector_potential(i).to_json() for i in range(1, 5)],
        }


def build_system(which: str, k: float = 1.0, omega: float = 1.0) -> SCSystem:
    derived = derive_matrices(build_generators("dirac_c40"))
    if which == "example1":
        domain = "full_line"
        realization = realize_1d(QuasiPoly.monomial(k, s=-1), 0.0, 0.0, 1.0, domain=domain)
        d_op = dilatation(domain).lift(np.eye(4))
        k_op = conformal(domain).lift(np.eye(4))
        q = realization.supercharges.ladder
        system = SCSystem(
            "example1",
            {"k": k},
            domain,
            realization,
            realization.h,
            q,
            d_op,
            k_op,
            conformal_supercharges(k_op, q),
            "X",
            _triple_operators(derived.x_triple, domain),
        )
    elif which == "example2":
        if omega <= 0:
            raise NonpositiveOmega(f"omega must be positive, got {omega}")
        domain = "half_line"
        realization = realize_1d(QuasiPoly.monomial(omega, s=1), 0.0, 0.0, 1.0, domain=domain)
        # W = x with k = 0 keeps only the W'/2W part: the ω-independent charges
        dot = realize_1d(QuasiPoly.monomial(1.0, s=1), 0.0, 0.0, 0.0, domain=domain)
        d_op = dilatation(domain).lift(np.eye(4))
        k_op = conformal(domain).lift(np.eye(4))
        q_dot = dot.supercharges.ladder
        s = conformal_supercharges(k_op, q_dot)
        triple = _triple_operators(derived.y_triple, domain)
        u, v = 1 / (2 * sqrt(omega)), sqrt(omega) / 2
        h0 = dot.h
        tlr = {
            "T3": h0 / (2 * omega) + k_op * (omega / 2),
            "T+": h0 / (2 * omega) - k_op * (omega / 2) - d_op * 1j,
            "T-": h0 / (2 * omega) - k_op * (omega / 2) + d_op * 1j,
            **{f"L{sg}{mu}": q_dot[(sg, mu)] * u - s[(sg, mu)] * v for (sg, mu) in q_dot},
            **{f"R{sg}{mu}": q_dot[(sg, mu)] * u + s[(sg, mu)] * v for (sg, mu) in q_dot},
        }
        system = SCSystem(
            "example2",
            {"omega": omega},
            domain,
            realization,
            realization.h,
            realization.supercharges.ladder,
            d_op,
            k_op,
            s,
            "Y",
            triple,
            {"h0_dot": h0, "q_dot": q_dot, "dot": dot, "tlr": tlr},
        )
    else:
        raise ValueError(f"System {which} is not supported.")
    logger.info(f"Built superconformal system {system.label()}")
    return system


def verify_closure(
    table: AlgebraTable,
    system: SCSystem,
    tests: Optional[list] = None,
    threshold: float = RESIDUAL_THRESHOLD,
) -> ClosureReport:
    tests = tests or standard_test_family(4, system.domain)
    return verify_table(table, system.bindings(table.name), tests, params=system.params, threshold=threshold)
