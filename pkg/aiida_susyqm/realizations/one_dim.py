from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..base.utils import get_logger
from ..clifford import build_generators, derive_matrices
from ..exceptions import ZeroSuperpotential
from ..operators import ResidualReport, SpinorOperator, identity_residual, matrix_operator, standard_test_family
from ..ring import QuasiPoly
from .general import ADTable, Supercharges, build_ad_table, compute_B, general_hamiltonian, general_supercharges

logger = get_logger("realizations.one_dim")


def monomial_superpotential(w: Union[QuasiPoly, tuple]) -> QuasiPoly:
    """Accept ``c*x^p`` as a QuasiPoly or a ``(c, p)`` pair."""
    if not isinstance(w, QuasiPoly):
        c, p = w
        w = QuasiPoly.monomial(c, s=p)
    if w.is_zero():
        raise ZeroSuperpotential("superpotential W vanishes identically")
    if len(w) != 1:
        raise ValueError(f"superpotential must be a monomial c*x^p, got {len(w)} terms")
    (term,) = w.terms
    if term.a != 0 or term.b != 0:
        raise ValueError("superpotential must be a plain power of x")
    return w


def monomial_inverse(w: QuasiPoly) -> QuasiPoly:
    (term,) = w.terms
    return QuasiPoly.monomial(1.0 / term.coeff, s=term.s.negate())


def log_derivative_half(w: QuasiPoly) -> QuasiPoly:
    """W'/(2W), a single ring element p/(2x) for W = c x^p."""
    return (w.derivative() * monomial_inverse(w)).scale(0.5)


@dataclass(frozen=True, eq=False)
class Realization1D:
    w: QuasiPoly
    k: tuple
    domain: str
    table: ADTable
    supercharges: Supercharges
    h: SpinorOperator
    b: tuple
    eta: dict
    zeta: dict
    eps: dict

    @property
    def k_plus(self) -> complex:
        return complex(self.k[0], self.k[1])

    @property
    def k_minus(self) -> complex:
        return complex(self.k[0], -self.k[1])

    @property
    def f(self) -> QuasiPoly:
        return log_derivative_half(self.w)

    @property
    def is_diagonal(self) -> bool:
        return self.k_plus == 0

    def q_plus(self, mu: int) -> SpinorOperator:
        return self.supercharges.plus(mu)

    def q_minus(self, mu: int) -> SpinorOperator:
        return self.supercharges.minus(mu)

    def sector(self, i: int) -> SpinorOperator:
        """Scalar Hamiltonian on the i-th diagonal entry."""
        return self.h.entry(i, i)

    def sector_potential(self, i: int) -> QuasiPoly:
        return self.h.coefficient(0, i, i)

    @property
    def coupling_norm(self) -> float:
        """|k|; the 3-4 potential block is W' times a Hermitian matrix with eigenvalues ±|k|."""
        return float(np.linalg.norm(self.k))

    def block_rotation(self) -> np.ndarray:
        """Constant unitary U with U^† H U diagonal; identity when k± = 0."""
        u = np.eye(4, dtype=complex)
        if self.is_diagonal:
            return u
        kappa, k3 = self.coupling_norm, self.k[2]
        scale = np.sqrt(2.0 * kappa * (kappa + k3))
        u[2:, 2:] = np.array([[k3 + kappa, -self.k_minus], [self.k_plus, k3 + kappa]]) / scale
        return u

    def decoupled_sector(self, i: int) -> SpinorOperator:
        """Scalar Hamiltonian on the i-th diagonal entry of U^† H U.

        Sectors 3 and 4 see +|k| W' and -|k| W' in place of ±k3 W'.
        """
        if self.is_diagonal or i in (1, 2):
            return self.sector(i)
        dw = self.w.derivative().scale(self.coupling_norm - self.k[2])
        shift = SpinorOperator.multiplication(dw, domain=self.domain)
        return self.sector(3) + shift if i == 3 else self.sector(4) - shift

    def displayed_supercharges(self) -> dict:
        """Q±_μ assembled entrywise from η, ζ, ε."""
        eta, zeta, eps = self.eta, self.zeta, self.eps
        plus1 = matrix_operator(
            {(1, 3): eta["+"], (1, 4): eps["-"], (3, 2): -eps["-"], (4, 2): zeta["+"]}, 4, self.domain
        )
        plus2 = matrix_operator(
            {(2, 3): eta["+"], (2, 4): eps["-"], (3, 1): eps["-"], (4, 1): -zeta["+"]}, 4, self.domain
        )
        return {("+", 1): plus1, ("-", 1): plus1.adjoint(), ("+", 2): plus2, ("-", 2): plus2.adjoint()}

    def displayed_hamiltonian(self) -> SpinorOperator:
        """1/2 (p^2 + k^2 W^2 + f^2) I plus the quasi-diagonal potential block."""
        p = SpinorOperator.momentum(domain=self.domain)
        w, f = self.w, self.f
        dw, df = w.derivative(), f.derivative()
        k1, k2, k3 = self.k
        k_squared = k1**2 + k2**2 + k3**2
        common = p @ p * 0.5 + SpinorOperator.multiplication((w * w).scale(0.5 * k_squared) + (f * f).scale(0.5))
        potentials = {
            (1, 1): df.scale(-0.5),
            (2, 2): df.scale(-0.5),
            (3, 3): df.scale(0.5) + dw.scale(k3),
            (4, 4): df.scale(0.5) - dw.scale(k3),
            (3, 4): dw.scale(self.k_minus),
            (4, 3): dw.scale(self.k_plus),
        }
        entries = {(i, i): common for i in range(1, 5)}
        for (i, j), v in potentials.items():
            op = SpinorOperator.multiplication(v, domain=self.domain)
            entries[(i, j)] = entries[(i, j)] + op if (i, j) in entries else op
        return matrix_operator(entries, 4, self.domain)

    def consistency(self, tests: Optional[list] = None) -> list:
        """General construction against the entrywise displays."""
        tests = tests or standard_test_family(4, self.domain)
        reports = []
        for (s, mu), op in self.displayed_supercharges().items():
            reports.append(identity_residual(self.supercharges.ladder[(s, mu)], op, tests, f"display.Q{s}{mu}"))
        reports.append(identity_residual(self.h, self.displayed_hamiltonian(), tests, "display.H"))
        return reports

    def intertwining(self, tests: Optional[list] = None, threshold: float = 1e-12) -> list:
        """η+ H_3 = H_1 η+ and ζ+ H_1 = H_4 ζ+ for the diagonal realization."""
        if not self.is_diagonal:
            raise ValueError("intertwining relations need k1 = k2 = 0")
        tests = tests or standard_test_family(1, self.domain)
        h1, h3, h4 = self.sector(1), self.sector(3), self.sector(4)
        eta, zeta = self.eta["+"], self.zeta["+"]
        return [
            identity_residual(eta @ h3, h1 @ eta, tests, "intertwining.eta", threshold),
            identity_residual(zeta @ h1, h4 @ zeta, tests, "intertwining.zeta", threshold),
        ]

    def x3_commutator(self, tests: Optional[list] = None, threshold: float = 1e-12) -> ResidualReport:
        tests = tests or standard_test_family(4, self.domain)
        x3 = SpinorOperator.constant_matrix(derive_matrices(build_generators("dirac_c40")).x_triple[0], self.domain)
        zero = SpinorOperator.zero(4, self.domain)
        return identity_residual(self.h.commutator(x3), zero, tests, "commutator.H.X3", threshold)

    def to_json(self) -> dict:
        return {
            "W": self.w.to_json(),
            "k": list(self.k),
            "domain": self.domain,
            "diagonal": self.is_diagonal,
            "potentials": {
                f"{i}{j}": self.h.coefficient(0, i, j).to_json()
                for i in range(1, 5)
                for j in range(1, 5)
                if not self.h.coefficient(0, i, j).is_zero()
            },
        }


def realize_1d(
    w,
    k1: float = 0.0,
    k2: float = 0.0,
    k3: float = 1.0,
    domain: str = "half_line",
    check: bool = True,
) -> Realization1D:
    """N=4 realization on the line from the monomial superpotential ``w``.

    Seeds: A = (k1 W, k2 W, k3 W, p), D = (0, 0, 0, W'/2W).
    """
    w = monomial_superpotential(w)
    f = log_derivative_half(w)
    p = SpinorOperator.momentum(domain=domain)

    def mult(g: QuasiPoly) -> SpinorOperator:
        return SpinorOperator.multiplication(g, domain=domain)

    zero = SpinorOperator.zero(1, domain)
    a4 = (mult(w.scale(k1)), mult(w.scale(k2)), mult(w.scale(k3)), p)
    d4 = (zero, zero, zero, mult(f))
    table = build_ad_table(a4, d4, check=check)
    supercharges = general_supercharges(table)
    h = general_hamiltonian(table)
    b = compute_B(table)[:3]

    alpha, beta = w.scale(k3) + f, w.scale(k3) - f
    k_minus = complex(k1, -k2)
    k_plus = complex(k1, k2)
    eta = {"+": p + mult(alpha) * 1j, "-": p - mult(alpha) * 1j}
    zeta = {"+": p + mult(beta) * 1j, "-": p - mult(beta) * 1j}
    eps = {"+": mult(w) * (-1j * k_plus), "-": mult(w) * (1j * k_minus)}
    realization = Realization1D(w, (k1, k2, k3), domain, table, supercharges, h, b, eta, zeta, eps)
    logger.debug(f"1D realization W={w!r} k={(k1, k2, k3)} built on {domain}")
    return realization

