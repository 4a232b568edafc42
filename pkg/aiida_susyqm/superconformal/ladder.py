"""Zero modes, the T+ ladder of the oscillator system and its spectrum table."""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..base.utils import as_fraction, get_logger
from ..exceptions import BadSector, LadderAnnihilation, NotInRing
from ..operators import SpinorField, SpinorOperator
from ..realizations import Realization1D
from ..ring import Exponent, NormResult, QuasiPoly
from ..spectral.clustering import level_diagram
from ..spectral.residual import eigen_residual
from ..spectral.special import laguerre_qp
from .systems import Y3_LABELS, SCSystem, dilatation

logger = get_logger("superconformal.ladder")

MAX_LADDER = 12
RATE_DENOMINATOR = 10**6

# (intertwiner, sign) annihilating each sector's zero mode, and the sign of the
# integrated rate in psi = exp(sign * int g)
SECTOR_ANNIHILATORS = {
    1: ("eta", "-", -1),
    2: ("zeta", "+", 1),
    3: ("eta", "+", 1),
    4: ("zeta", "-", -1),
}


def _rate(c: complex) -> Fraction:
    if abs(c.imag) > 1e-12 * max(1.0, abs(c)):
        raise NotInRing(f"complex rate {c} has no real exponential solution")
    return Fraction(c.real).limit_denominator(RATE_DENOMINATOR)


def integrate_exponential(g: QuasiPoly, sign: int = 1) -> QuasiPoly:
    """exp(sign * int g) for g built from 1/x, constant and x terms."""
    power, a, b = Fraction(0), Fraction(0), Fraction(0)
    for term in g.terms:
        if term.a != 0 or term.b != 0:
            raise NotInRing("exponential factors in the rate cannot be integrated in the ring")
        rate = sign * _rate(term.coeff)
        s = term.s.value()
        if s == -1:
            power += rate
        elif s == 0:
            a += rate
        elif s == 1:
            b -= rate / 2
        else:
            raise NotInRing(f"x^{s} in the rate integrates outside the ring")
    return QuasiPoly.monomial(1.0, s=power, a=a, b=b)


def _apply(op: SpinorOperator, psi: QuasiPoly) -> QuasiPoly:
    return op.apply(SpinorField.scalar(psi))[1]


@dataclass
class ZeroMode:
    sector: int
    psi: QuasiPoly
    norm: NormResult
    annihilation_residual: float

    @property
    def normalizable(self) -> bool:
        return self.norm.is_finite

    def to_json(self) -> dict:
        return {
            "sector": self.sector,
            "psi": self.psi.to_json(),
            "norm": self.norm.to_dict(),
            "annihilation_residual": self.annihilation_residual,
        }


@dataclass
class ZeroModeReport:
    system: str
    modes: list = field(default_factory=list)

    @property
    def normalizable(self) -> list:
        return [m.sector for m in self.modes if m.normalizable]

    @property
    def verdict(self) -> str:
        return "SUSY unbroken" if self.normalizable else "SUSY broken"

    def __iter__(self):
        return iter((m.sector, m.psi, m.norm) for m in self.modes)

    def __len__(self):
        return len(self.modes)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "modes": [m.to_json() for m in self.modes],
            "normalizable": self.normalizable,
            "verdict": self.verdict,
        }


def zero_modes(system: SCSystem) -> ZeroModeReport:
    return realization_zero_modes(system.realization, system.label())


def realization_zero_modes(r: Realization1D, label: str = "") -> ZeroModeReport:
    """Solve the first-order annihilation condition of every sector in the ring."""
    k3 = r.k[2]
    alpha = r.w.scale(k3) + r.f
    beta = r.w.scale(k3) - r.f
    report = ZeroModeReport(label or f"W={r.w!r}")
    for sector, (name, sign, direction) in SECTOR_ANNIHILATORS.items():
        rate = alpha if name == "eta" else beta
        psi = integrate_exponential(rate, direction)
        op = (r.eta if name == "eta" else r.zeta)[sign]
        residual = _apply(op, psi).max_abs_coeff() / psi.max_abs_coeff()
        report.modes.append(ZeroMode(sector, psi, psi.norm_squared(r.domain), residual))
    logger.info(f"{report.system}: normalizable zero modes in sectors {report.normalizable} ({report.verdict})")
    return report


def formal_zero_modes() -> tuple:
    """The W = k/x zero modes with k kept as a formal exponent parameter."""
    return (
        QuasiPoly.monomial(1.0, s=Exponent(Fraction(1, 2), Fraction(-1))),
        QuasiPoly.monomial(1.0, s=Exponent(Fraction(1, 2), Fraction(1))),
        QuasiPoly.monomial(1.0, s=Exponent(Fraction(-1, 2), Fraction(1))),
        QuasiPoly.monomial(1.0, s=Exponent(Fraction(-1, 2), Fraction(-1))),
    )


def lambda_index(i: int, k) -> Fraction:
    """Bessel order k + (-)^i [i/3] of sector i: (k, k, k-1, k+1)."""
    if i not in (1, 2, 3, 4):
        raise BadSector(f"sector {i} is not one of 1..4")
    return as_fraction(k) + (-1) ** i * (i // 3)


def energy_map(n: int, i: int, omega: float = 1.0) -> tuple:
    """(Ẽ_i, e_i, Δ_i) with Ẽ_i = 2ω(e_i + Δ_i)."""
    if i not in (1, 2, 3, 4):
        raise BadSector(f"sector {i} is not one of 1..4")
    if not isinstance(n, int) or n < 0:
        raise BadSector(f"level index must be a non-negative integer, got {n!r}")
    delta = Fraction((-1) ** (i + 1), 2) * (i // 3)
    e = Fraction(n + 1) if i <= 2 else Fraction(2 * n + 1, 2)
    return 2 * omega * float(e + delta), e, delta


def closed_form_state(n: int, i: int, omega: float = 1.0) -> QuasiPoly:
    """Laguerre form: x^{3/2} L^1_n(ωx^2) in sectors 1, 2 and x^{1/2} L^0_n(ωx^2) in 3, 4."""
    if i not in (1, 2, 3, 4):
        raise BadSector(f"sector {i} is not one of 1..4")
    a, s = (1, Fraction(3, 2)) if i <= 2 else (0, Fraction(1, 2))
    envelope = QuasiPoly.monomial(1.0, s=s, b=as_fraction(omega) / 2)
    return laguerre_qp(n, a, omega) * envelope


def proportionality(psi: QuasiPoly, phi: QuasiPoly) -> tuple:
    """(c, residual) with psi ≈ c phi by least squares on ring coefficients."""
    keys = set(dict(psi.items())) | set(dict(phi.items()))
    p = dict(psi.items())
    q = dict(phi.items())
    denom = sum(abs(q.get(k, 0)) ** 2 for k in keys)
    if denom == 0:
        return 0.0, float("inf")
    c = sum(q.get(k, 0).conjugate() * p.get(k, 0) for k in keys) / denom
    residual = (psi - phi.scale(c)).max_abs_coeff() / max(psi.max_abs_coeff(), 1e-300)
    return c, residual


def normalize(psi: QuasiPoly, domain: str = "half_line") -> QuasiPoly:
    norm = psi.norm_squared(domain)
    if not norm.is_finite or norm.value <= 0:
        raise LadderAnnihilation(f"state {psi!r} cannot be normalized ({norm.to_dict()})")
    return psi.scale(norm.value**-0.5)


@dataclass
class LadderState:
    n: int
    sector: int
    energy: float
    e: Fraction
    delta: Fraction
    psi: QuasiPoly
    eigen_residual: float
    t3_residual: float
    closed_form_residual: float
    constant: complex

    @property
    def y3(self) -> int:
        return Y3_LABELS[self.sector - 1]

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "sector": self.sector,
            "E": self.energy,
            "e": str(self.e),
            "Y3_label": self.y3,
        }


@dataclass
class SpectrumTable:
    omega: float
    states: list = field(default_factory=list)

    def energies(self, sector: int) -> list:
        return [s.energy for s in self.states if s.sector == sector]

    def state(self, n: int, sector: int) -> LadderState:
        for s in self.states:
            if s.n == n and s.sector == sector:
                return s
        raise KeyError((n, sector))

    def max_residual(self) -> float:
        return max(
            (max(s.eigen_residual, s.t3_residual, s.closed_form_residual) for s in self.states), default=0.0
        )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=["n", "sector", "E", "e", "Y3_label"], lineterminator="\n")
        writer.writeheader()
        for s in sorted(self.states, key=lambda s: (s.energy, s.sector)):
            writer.writerow(s.to_row())
        return buffer.getvalue()

    def columns(self, quantity: str = "E") -> dict:
        """Levels grouped by Y3 value, as energies of H̃ or eigenvalues of T3."""
        grouped = {-1: [], 0: [], 1: []}
        for s in self.states:
            grouped[s.y3].append(s.energy if quantity == "E" else float(s.e))
        return {f"Y3={y:+d}" if y else "Y3=0": levels for y, levels in sorted(grouped.items())}

    def ascii_diagram(self, quantity: str = "E") -> str:
        return level_diagram(self.columns(quantity), label="E" if quantity == "E" else "e")


def _t_plus_sector(system: SCSystem, sector: int) -> SpinorOperator:
    omega = system.omega
    h0 = system.extras["h0_dot"].entry(sector, sector)
    quarter = SpinorOperator.multiplication(QuasiPoly.monomial(omega / 4, s=2), domain=system.domain)
    return h0 / (2 * omega) - quarter - dilatation(system.domain) * 1j


def _t3_sector(system: SCSystem, sector: int) -> SpinorOperator:
    omega = system.omega
    h0 = system.extras["h0_dot"].entry(sector, sector)
    quarter = SpinorOperator.multiplication(QuasiPoly.monomial(omega / 4, s=2), domain=system.domain)
    return h0 / (2 * omega) + quarter


def ladder_spectrum(system: SCSystem, n_max: int = 10) -> SpectrumTable:
    """States ψ̃_{n,i} for n <= n_max from the sector-4 zero mode.

    ψ_{n,4} = (T+)^n ψ_{0,4}; ψ_{n,1} = ψ_{n,2} ∝ ζ̃- ψ_{n+1,4}; ψ_{n,3} ∝ η̃- ψ_{n,1}.
    """
    if system.which != "example2":
        raise ValueError("the ladder construction needs the W = ωx system")
    if not 0 <= n_max <= MAX_LADDER:
        raise ValueError(f"n_max must lie in 0..{MAX_LADDER}, got {n_max}")
    omega = system.omega
    r = system.realization
    ground = next(m for m in zero_modes(system).modes if m.sector == 4)
    if not ground.normalizable:
        raise LadderAnnihilation("sector-4 zero mode is not normalizable")

    t_plus = _t_plus_sector(system, 4)
    chain = [ground.psi]
    for _ in range(n_max + 1):
        chain.append(_apply(t_plus, chain[-1]))
        if chain[-1].is_zero():
            raise LadderAnnihilation(f"T+ annihilated the sector-4 state at level {len(chain) - 2}")

    table = SpectrumTable(omega)
    for n in range(n_max + 1):
        psi12 = _apply(r.zeta["-"], chain[n + 1])
        if psi12.is_zero():
            raise LadderAnnihilation(f"ζ- annihilated ψ_{n + 1},4")
        psi3 = _apply(r.eta["-"], psi12)
        if psi3.is_zero():
            raise LadderAnnihilation(f"η- annihilated ψ_{n},1")
        for sector, raw in ((1, psi12), (2, psi12), (3, psi3), (4, chain[n])):
            psi = normalize(raw, system.domain)
            energy, e, delta = energy_map(n, sector, omega)
            t3 = _apply(_t3_sector(system, sector), psi) - psi.scale(float(e))
            constant, closed = proportionality(psi, closed_form_state(n, sector, omega))
            table.states.append(
                LadderState(
                    n,
                    sector,
                    energy,
                    e,
                    delta,
                    psi,
                    eigen_residual(system.sector(sector), psi, energy),
                    t3.max_abs_coeff() / psi.max_abs_coeff(),
                    closed,
                    constant,
                )
            )
    logger.info(f"Ladder for ω={omega} built through n={n_max}, max residual {table.max_residual():.3e}")
    return table


def t3_levels(n_max: int) -> list:
    """Analytic T3 eigenvalues e_i for n <= n_max, four per level."""
    return [float(energy_map(n, i)[1]) for n in range(n_max + 1) for i in range(1, 5)]


def expected_energies(n_max: int, omega: float = 1.0, sector: Optional[int] = None) -> list:
    sectors = (sector,) if sector else (1, 2, 3, 4)
    return [energy_map(n, i, omega)[0] for i in sectors for n in range(n_max + 1)]
