"""General N=4 structure built from the (A_j, D_j) operator seeds.

The seeds act on an inner space of dimension ``m`` (1 for the radial line);
spinor matrices are lifted with ``SpinorOperator.lift`` so the 4x4 Clifford
index is the major one.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..algebra import SS4, ClosureReport, verify_closure
from ..base.utils import get_logger
from ..clifford import GeneratorSet, build_generators, derive_matrices, hat_products, levi_civita
from ..exceptions import ConstraintViolation, DimensionMismatch, FormMismatch
from ..operators import (
    RESIDUAL_THRESHOLD,
    ResidualReport,
    SpinorOperator,
    identity_residual,
    standard_test_family,
)

logger = get_logger("realizations")

EPS = levi_civita(4)
# index pairs (j, k) of the six independent antisymmetric combinations
PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
# Γ combinations multiplying B_1, B_2, B_3
B_GAMMAS = (((1, 4), (3, 2)), ((2, 4), (1, 3)), ((3, 4), (2, 1)))


def _linear(ops, weights) -> SpinorOperator:
    result = SpinorOperator.zero(ops[0].dim, ops[0].domain)
    for op, w in zip(ops, weights):
        w = complex(w)
        if w != 0:
            result = result + op * w
    return result


def _is_zero_everywhere(ops) -> bool:
    return all(op.is_zero() for op in ops)


@dataclass(frozen=True, eq=False)
class ADTable:
    """A_j = A^4_j and D_j = D^4_j; the other rows follow by Ξ contraction."""

    a: tuple
    d: tuple
    xi: GeneratorSet
    reports: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.a[0].dim

    @property
    def domain(self) -> Optional[str]:
        return self.a[0].domain

    def a_alpha(self, alpha: int) -> tuple:
        if alpha == 4:
            return self.a
        xi = self.xi[alpha].real
        return tuple(_linear(self.a, xi[i]) for i in range(4))

    def d_alpha(self, alpha: int) -> tuple:
        if alpha == 4:
            return self.d
        xi = self.xi[alpha].real
        return tuple(_linear(self.d, xi[i]) for i in range(4))

    def u(self, alpha: int = 4) -> SpinorOperator:
        a, d = self.a_alpha(alpha), self.d_alpha(alpha)
        return _linear([x @ x for x in a + d], [1.0] * 8)

    def v(self, alpha: int = 4) -> SpinorOperator:
        a, d = self.a_alpha(alpha), self.d_alpha(alpha)
        return _linear([x.commutator(y) for x, y in zip(a, d)], [1j] * 4)

    def max_residual(self) -> float:
        return max((r.max_residual for reps in self.reports.values() for r in reps), default=0.0)


def _condition_3(t: ADTable, j: int, k: int, b: tuple, wp: GeneratorSet) -> SpinorOperator:
    """i[A_j,A_k] + i[D_j,D_k] + 1/2 eps_jkmn({A_m,D_n} - {A_n,D_m}) + ℘^l_jk B_l."""
    a, d = t.a, t.d
    expr = (a[j - 1].commutator(a[k - 1]) + d[j - 1].commutator(d[k - 1])) * 1j
    for m in range(4):
        for n in range(4):
            e = EPS[j - 1, k - 1, m, n]
            if e:
                expr = expr + (a[m].anticommutator(d[n]) - a[n].anticommutator(d[m])) * (0.5 * e)
    for lidx in range(3):
        w = wp[lidx + 1][j - 1, k - 1].real
        if w:
            expr = expr + b[lidx] * w
    return expr


def _condition_5(t: ADTable, alpha: int, beta: int, j: int, k: int) -> SpinorOperator:
    a1, d1 = t.a_alpha(alpha), t.d_alpha(alpha)
    a2, d2 = t.a_alpha(beta), t.d_alpha(beta)
    j, k = j - 1, k - 1
    expr = (
        a1[j].commutator(a2[k])
        - a1[k].commutator(a2[j])
        + d1[j].commutator(d2[k])
        - d1[k].commutator(d2[j])
    )
    for m in range(4):
        for n in range(4):
            e = EPS[j, k, m, n]
            if e:
                expr = expr + (a1[n].anticommutator(d2[m]) + a2[n].anticommutator(d1[m])) * (1j * e)
    return expr


def check_conditions(t: ADTable, tests: Optional[list] = None, threshold: float = RESIDUAL_THRESHOLD) -> dict:
    """Residual reports of the six constraint conditions, keyed by condition number."""
    tests = tests or standard_test_family(t.dim, t.domain)
    zero = SpinorOperator.zero(t.dim, t.domain)
    reports = {n: [] for n in range(1, 7)}
    u4, v4 = t.u(4), t.v(4)
    for alpha in (1, 2, 3):
        reports[1].append(identity_residual(t.u(alpha), u4, tests, f"condition1.U{alpha}", threshold))
        reports[2].append(identity_residual(t.v(alpha), v4, tests, f"condition2.V{alpha}", threshold))

    b = compute_B(t, tests=tests, threshold=threshold)[:3]
    wp = build_generators("wp")
    for j, k in PAIRS:
        reports[3].append(identity_residual(_condition_3(t, j, k, b, wp), zero, tests, f"condition3.{j}{k}", threshold))

    for alpha in range(1, 5):
        for beta in range(alpha + 1, 5):
            a1, d1 = t.a_alpha(alpha), t.d_alpha(alpha)
            a2, d2 = t.a_alpha(beta), t.d_alpha(beta)
            c4 = _linear([x.anticommutator(y) for x, y in zip(a1 + d1, a2 + d2)], [1.0] * 8)
            reports[4].append(identity_residual(c4, zero, tests, f"condition4.{alpha}{beta}", threshold))
            for j, k in PAIRS:
                c5 = _condition_5(t, alpha, beta, j, k)
                reports[5].append(identity_residual(c5, zero, tests, f"condition5.{alpha}{beta}.{j}{k}", threshold))
            c6 = _linear(
                [x.commutator(y) for x, y in zip(a1, d2)] + [x.commutator(y) for x, y in zip(a2, d1)], [1.0] * 8
            )
            reports[6].append(identity_residual(c6, zero, tests, f"condition6.{alpha}{beta}", threshold))
    return reports


def build_ad_table(
    a4,
    d4,
    xi: Optional[GeneratorSet] = None,
    check: bool = True,
    tests: Optional[list] = None,
    threshold: float = RESIDUAL_THRESHOLD,
) -> ADTable:
    a4, d4 = tuple(a4), tuple(d4)
    if len(a4) != 4 or len(d4) != 4:
        raise DimensionMismatch("A and D seeds need four operators each")
    dims = {op.dim for op in a4 + d4}
    if len(dims) != 1:
        raise DimensionMismatch(f"seed operators act on different inner dimensions {sorted(dims)}")
    table = ADTable(a4, d4, xi or build_generators("xi_c03"))
    if not check:
        return table
    reports = check_conditions(table, tests, threshold)
    table.reports.update(reports)
    for condition in range(1, 7):
        failing = [r for r in reports[condition] if not r.passed]
        if failing:
            worst = max(failing, key=lambda r: r.max_residual)
            detail = worst.identity_name
            if condition in (1, 2):
                label = "U" if condition == 1 else "V"
                detail += f"; {label}^4 = {table.u(4) if condition == 1 else table.v(4)!r}"
            raise ConstraintViolation(condition, worst.max_residual, detail)
    logger.debug(f"A/D table satisfies all conditions, max residual {table.max_residual():.3e}")
    return table


@dataclass(frozen=True, eq=False)
class Supercharges:
    hermitian: tuple
    ladder: dict

    def plus(self, mu: int) -> SpinorOperator:
        return self.ladder[("+", mu)]

    def minus(self, mu: int) -> SpinorOperator:
        return self.ladder[("-", mu)]

    def bindings(self, prefix: str = "Q") -> dict:
        return {f"{prefix}{s}{mu}": op for (s, mu), op in self.ladder.items()}


def ladder_combinations(q: tuple) -> dict:
    """Q±_1 = (Q^4 ∓ iQ^1)/√2, Q±_2 = (Q^2 ∓ iQ^3)/√2."""
    r = 1 / np.sqrt(2)
    return {
        ("+", 1): (q[3] - q[0] * 1j) * r,
        ("-", 1): (q[3] + q[0] * 1j) * r,
        ("+", 2): (q[1] - q[2] * 1j) * r,
        ("-", 2): (q[1] + q[2] * 1j) * r,
    }


def general_supercharges(t: ADTable, c: Optional[GeneratorSet] = None) -> Supercharges:
    c = c or build_generators("dirac_c40")
    hats = hat_products(c)
    charges = []
    for alpha in range(1, 5):
        a, d = t.a_alpha(alpha), t.d_alpha(alpha)
        q = SpinorOperator.zero(4 * t.dim, t.domain)
        for j in range(4):
            q = q + a[j].lift(c[j + 1]) + d[j].lift(hats[j]) * 1j
        charges.append(q / np.sqrt(2))
    return Supercharges(tuple(charges), ladder_combinations(charges))


def compute_B(t: ADTable, tests: Optional[list] = None, threshold: float = 1e-12) -> tuple:
    """(B_1, B_2, B_3, consistency) with B_l from the first of its two expressions."""
    a, d = t.a, t.d

    def ac(x, y):
        return x.anticommutator(y)

    def cm(x, y):
        return x.commutator(y)

    first = (
        (cm(a[0], a[3]) + cm(d[0], d[3])) * -1j - ac(a[1], d[2]) + ac(a[2], d[1]),
        (cm(a[1], a[3]) + cm(d[1], d[3])) * -1j - ac(a[2], d[0]) + ac(a[0], d[2]),
        (cm(a[2], a[3]) + cm(d[2], d[3])) * -1j - ac(a[0], d[1]) + ac(a[1], d[0]),
    )
    second = (
        (cm(a[1], a[2]) + cm(d[1], d[2])) * 1j + ac(a[0], d[3]) - ac(a[3], d[0]),
        (cm(a[2], a[0]) + cm(d[2], d[0])) * 1j + ac(a[1], d[3]) - ac(a[3], d[1]),
        (cm(a[0], a[1]) + cm(d[0], d[1])) * 1j + ac(a[2], d[3]) - ac(a[3], d[2]),
    )
    tests = tests or standard_test_family(t.dim, t.domain)
    consistency = ResidualReport("B.consistency", [], threshold)
    for lidx, (b1, b2) in enumerate(zip(first, second), start=1):
        consistency = consistency.merge(identity_residual(b1, b2, tests, f"B{lidx}", threshold))
    return (*first, consistency)


def hamiltonian_forms(t: ADTable, c: Optional[GeneratorSet] = None) -> dict:
    """H assembled three ways: Γ_jk form, ℘-contracted form and C± commutator form."""
    c = c or build_generators("dirac_c40")
    derived = derive_matrices(c)
    a, d = t.a, t.d
    b = compute_B(t)[:3]
    kinetic = _linear([x @ x for x in a + d], [0.5] * 8).lift(np.eye(4))
    chiral = _linear([x.commutator(y) for x, y in zip(a, d)], [0.5j] * 4)

    gamma_form = kinetic + chiral.lift(derived.chirality)
    for b_l, ((j1, k1), (j2, k2)) in zip(b, B_GAMMAS):
        gamma_form = gamma_form + b_l.lift(derived.gamma_at(j1, k1) + derived.gamma_at(j2, k2))

    wp = build_generators("wp")
    wp_form = kinetic + chiral.lift(derived.chirality)
    for lidx, b_l in enumerate(b, start=1):
        contracted = sum(wp[lidx][j, k].real * derived.gamma[(j + 1, k + 1)] for j in range(4) for k in range(4))
        wp_form = wp_form + b_l.lift(0.5 * contracted)

    cp1, cm1 = derived.c_plus(1), derived.c_minus(1)
    cp2, cm2 = derived.c_plus(2), derived.c_minus(2)
    ladder_form = (
        kinetic
        + b[0].lift(-(cp1 @ cm2 - cm1 @ cp2))
        + b[1].lift(1j * (cp1 @ cm2 + cm1 @ cp2))
        + b[2].lift(0.5 * ((cp1 @ cm1 - cm1 @ cp1) - (cp2 @ cm2 - cm2 @ cp2)))
        + (chiral * -1).lift((cp1 @ cm1 - cm1 @ cp1) @ (cp2 @ cm2 - cm2 @ cp2))
    )
    return {"gamma": gamma_form, "wp": wp_form, "ladder": ladder_form}


def general_hamiltonian(t: ADTable, c: Optional[GeneratorSet] = None) -> SpinorOperator:
    forms = hamiltonian_forms(t, c)
    h = forms["gamma"]
    for name in ("wp", "ladder"):
        if not h.equals(forms[name]):
            raise FormMismatch(name, (h - forms[name]).max_abs_coeff())
    return h


def verify_ss4(
    q: Supercharges,
    h: SpinorOperator,
    tests: Optional[list] = None,
    threshold: float = RESIDUAL_THRESHOLD,
) -> ClosureReport:
    """The 10 anticommutators and 4 commutators of SS(4) on the test family."""
    tests = tests or standard_test_family(h.dim, h.domain)
    bindings = {"H": h, **q.bindings()}
    return verify_closure(SS4, bindings, tests, threshold=threshold)
