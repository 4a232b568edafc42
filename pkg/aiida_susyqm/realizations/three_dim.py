"""Three-dimensional realization with a gauge field, verified pointwise.

Spinors have 8 components, index ``4x4 Clifford (major) x 2 Pauli``.
Operators are closures on sympy column vectors; partial derivatives are
exact and only the final residual is evaluated numerically.
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import sympy as sp

from ..algebra import SS4, ClosureReport
from ..base.utils import get_logger
from ..clifford import build_generators, derive_matrices, hat_products
from ..exceptions import UnsupportedGauge
from ..operators import ResidualReport
from .general import B_GAMMAS

logger = get_logger("realizations.three_dim")

COORDS = sp.symbols("x y z", real=True)
POINT_BOX = (0.3, 2.0)
POINTWISE_THRESHOLD = 1e-9

_UNIFORM_RE = re.compile(r"^uniform_B\((?P<b0>[^)]+)\)$")


def _exact(m: np.ndarray) -> sp.Matrix:
    def entry(z):
        return sp.nsimplify(round(z.real, 12)) + sp.I * sp.nsimplify(round(z.imag, 12))

    return sp.Matrix(m.shape[0], m.shape[1], lambda i, j: entry(complex(m[i, j])))


def lift_clifford(m: np.ndarray) -> sp.Matrix:
    return _exact(np.kron(m, np.eye(2)))


def lift_pauli(m: np.ndarray) -> sp.Matrix:
    return _exact(np.kron(np.eye(4), m))


class FieldOperator:
    """Linear operator on 8-component sympy fields."""

    __slots__ = ("action",)

    def __init__(self, action):
        self.action = action

    @classmethod
    def matrix(cls, m: sp.Matrix) -> "FieldOperator":
        return cls(lambda v: m * v)

    @classmethod
    def multiplication(cls, f) -> "FieldOperator":
        return cls(lambda v: f * v)

    @classmethod
    def momentum(cls, j: int) -> "FieldOperator":
        """-i d/dx_j, 0-based axis."""
        return cls(lambda v: -sp.I * v.diff(COORDS[j]))

    @classmethod
    def zero(cls) -> "FieldOperator":
        return cls(lambda v: sp.zeros(*v.shape))

    def __call__(self, v: sp.Matrix) -> sp.Matrix:
        return self.action(v)

    def __add__(self, other: "FieldOperator") -> "FieldOperator":
        return FieldOperator(lambda v: self(v) + other(v))

    def __sub__(self, other: "FieldOperator") -> "FieldOperator":
        return FieldOperator(lambda v: self(v) - other(v))

    def __mul__(self, c) -> "FieldOperator":
        return FieldOperator(lambda v: c * self(v))

    __rmul__ = __mul__

    def __matmul__(self, other: "FieldOperator") -> "FieldOperator":
        return FieldOperator(lambda v: self(other(v)))

    def commutator(self, other: "FieldOperator") -> "FieldOperator":
        return self @ other - other @ self

    def anticommutator(self, other: "FieldOperator") -> "FieldOperator":
        return self @ other + other @ self


def _combo(ops, weights) -> FieldOperator:
    result = FieldOperator.zero()
    for op, w in zip(ops, weights):
        if w:
            result = result + op * sp.nsimplify(w)
    return result


def parse_gauge(gauge: Union[str, tuple, None]):
    """``"zero"``, ``"uniform_B(B0)"`` or ``("uniform_B", B0)`` to (kind, B0)."""
    if gauge is None or gauge == "zero":
        return "zero", sp.Integer(0)
    if isinstance(gauge, tuple) and len(gauge) == 2 and gauge[0] == "uniform_B":
        return "uniform_B", sp.nsimplify(gauge[1])
    if isinstance(gauge, str):
        match = _UNIFORM_RE.match(gauge.replace(" ", ""))
        if match:
            return "uniform_B", sp.nsimplify(match["b0"])
    raise UnsupportedGauge(f"Gauge {gauge!r} is not supported.")


def gauge_potential(kind: str, b0) -> tuple:
    x, y, _ = COORDS
    if kind == "zero":
        return (sp.Integer(0),) * 3
    return (-b0 * y / 2, b0 * x / 2, sp.Integer(0))


def field_strength(potential: tuple) -> sp.Matrix:
    """F_kl = d_k L_l - d_l L_k."""
    return sp.Matrix(3, 3, lambda k, l: sp.diff(potential[l], COORDS[k]) - sp.diff(potential[k], COORDS[l]))


def gaussian_test_fields(count: int = 3) -> list:
    """8-component Gaussian x polynomial fields, every component populated."""
    x, y, z = COORDS
    gauss = sp.exp(-(x**2 + y**2 + z**2) / 2)
    polys = (
        1 + x,
        y - z / 2,
        x * y + 1,
        z**2 - x,
        1 + y * z,
        x - y + z,
        x**2 + 2,
        1 - x * z,
    )
    fields = []
    for shift in range(count):
        fields.append(sp.Matrix([polys[(c + shift) % 8] * gauss for c in range(8)]))
    return fields


def sample_points(count: int = 25, seed: int = 42) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(*POINT_BOX, size=(count, 3))


def _evaluate(v: sp.Matrix, points: np.ndarray) -> np.ndarray:
    fn = sp.lambdify(COORDS, list(v), modules="numpy")
    values = np.array([np.broadcast_to(np.asarray(c, dtype=complex), points.shape[:1]) for c in fn(*points.T)])
    return values


def _pointwise(lhs: np.ndarray, rhs: np.ndarray, base: np.ndarray) -> float:
    num = float(np.max(np.abs(lhs - rhs)))
    scale = max(float(np.max(np.abs(base))), float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return num / scale if scale > 0 else num


@dataclass(frozen=True, eq=False)
class Realization3D:
    w: sp.Expr
    k: tuple
    gauge: tuple
    potential: tuple
    f: tuple
    tau: object
    a: tuple
    d: tuple
    q: dict
    h: FieldOperator

    @property
    def field_strength(self) -> sp.Matrix:
        return field_strength(self.potential)

    def explicit_hamiltonian(self) -> FieldOperator:
        """1/2 pi^2 + 1/2 k^2 W^2 + 1/2 F^2 + 1/2 B.tau + (tau.grad W) sum_l k_l G_l
        + (1/2 div F + (F x pi).tau) chi, with pi = p + L."""
        derived = derive_matrices(build_generators("dirac_c40"))
        sig = [lift_pauli(s) for s in self.tau.gens]
        pis = [FieldOperator.momentum(j) + FieldOperator.multiplication(self.potential[j]) for j in range(3)]
        k_squared = sum(sp.nsimplify(kk) ** 2 for kk in self.k)
        grad_w = [sp.diff(self.w, c) for c in COORDS]
        fs = self.field_strength
        b_mag = (fs[1, 2], fs[2, 0], fs[0, 1])
        div_f = sum(sp.diff(self.f[j], COORDS[j]) for j in range(3))

        h = _combo([p @ p for p in pis], [sp.Rational(1, 2)] * 3)
        scalar = k_squared * self.w**2 / 2 + sum(fj**2 for fj in self.f) / 2
        h = h + FieldOperator.multiplication(scalar)
        h = h + FieldOperator.matrix(sum((b_mag[j] * sig[j] for j in range(3)), sp.zeros(8, 8)) / 2)

        spin_grad = sum((grad_w[j] * sig[j] for j in range(3)), sp.zeros(8, 8))
        coupling = sum(
            (
                sp.nsimplify(kl) * lift_clifford(derived.gamma_at(*g1) + derived.gamma_at(*g2))
                for kl, (g1, g2) in zip(self.k, B_GAMMAS)
            ),
            sp.zeros(8, 8),
        )
        h = h + FieldOperator.matrix(coupling * spin_grad)

        chi = lift_clifford(derived.chirality)
        orbit_spin = FieldOperator.multiplication(div_f / 2)
        for m in range(3):
            for n in range(3):
                for lidx in range(3):
                    e = int(sp.LeviCivita(lidx, m, n))
                    if e:
                        orbit_spin = orbit_spin + FieldOperator.matrix(e * self.f[m] * sig[lidx]) @ pis[n]
        return h + FieldOperator.matrix(chi) @ orbit_spin

    def constraint_residual(self) -> float:
        """max over n, j of |2 A_n F_j - d_j A_n| after simplification."""
        worst = 0.0
        for kn in self.k:
            a_n = sp.nsimplify(kn) * self.w
            for j in range(3):
                expr = sp.simplify(2 * a_n * self.f[j] - sp.diff(a_n, COORDS[j]))
                if expr != 0:
                    worst = max(worst, float(sp.Abs(expr.subs(dict(zip(COORDS, (1, 1, 1)))))))
        return worst

    def verify_ss4(
        self,
        points: Optional[np.ndarray] = None,
        tests: Optional[list] = None,
        seed: int = 42,
        threshold: float = POINTWISE_THRESHOLD,
    ) -> ClosureReport:
        """SS(4) relations applied to Gaussian test fields, compared at sampled points."""
        points = sample_points(seed=seed) if points is None else points
        tests = tests or gaussian_test_fields()
        bindings = {"H": self.h, **{f"Q{s}{mu}": op for (s, mu), op in self.q.items()}}
        report = ClosureReport(SS4.name)
        for index, psi in enumerate(tests):
            cache = {}

            def applied(*names):
                if names not in cache:
                    inner = psi if len(names) == 1 else applied(*names[1:])
                    cache[names] = bindings[names[0]](inner)
                return cache[names]

            base = _evaluate(psi, points)
            for rel in SS4.relations:
                sign = 1 if rel.bracket == "anticomm" else -1
                lhs = applied(rel.left, rel.right) + sign * applied(rel.right, rel.left)
                rhs = sp.zeros(8, 1)
                for t in rel.rhs:
                    rhs = rhs + (sp.nsimplify(t.coeff.real) + sp.I * sp.nsimplify(t.coeff.imag)) * applied(t.slot)
                name = SS4.relation_name(rel)
                residual = _pointwise(_evaluate(lhs, points), _evaluate(rhs, points), base)
                try:
                    report[name].per_test.append(residual)
                except KeyError:
                    report.reports.append(ResidualReport(name, [residual], threshold))
            logger.debug(f"3D SS4 test field {index}: max residual {report.max_residual:.3e}")
        return report

    def hamiltonian_consistency(
        self, points: Optional[np.ndarray] = None, tests: Optional[list] = None, seed: int = 42
    ) -> ResidualReport:
        points = sample_points(seed=seed) if points is None else points
        tests = tests or gaussian_test_fields()
        explicit = self.explicit_hamiltonian()
        per_test = [
            _pointwise(_evaluate(self.h(psi), points), _evaluate(explicit(psi), points), _evaluate(psi, points))
            for psi in tests
        ]
        return ResidualReport("H3D.explicit", per_test, POINTWISE_THRESHOLD)


def realize_3d(
    c: float = 1.0,
    p=2,
    gauge: Union[str, tuple, None] = "zero",
    k: tuple = (0, 0, 1),
) -> Realization3D:
    """Radial monomial W = c r^p with A_4 = (p + L).tau, D_4 = F.tau, A_n = k_n W."""
    kind, b0 = parse_gauge(gauge)
    x, y, z = COORDS
    r = sp.sqrt(x**2 + y**2 + z**2)
    w = sp.nsimplify(c) * r ** sp.nsimplify(p)
    potential = gauge_potential(kind, b0)
    f = tuple(sp.simplify(sp.diff(w, q) / (2 * w)) for q in COORDS)
    tau = build_generators("pauli_tau")
    sig = [lift_pauli(s) for s in tau.gens]

    a4 = _combo(
        [
            FieldOperator.matrix(sig[j]) @ (FieldOperator.momentum(j) + FieldOperator.multiplication(potential[j]))
            for j in range(3)
        ],
        [1, 1, 1],
    )
    d4 = FieldOperator.matrix(sum((f[j] * sig[j] for j in range(3)), sp.zeros(8, 8)))
    a = tuple(FieldOperator.multiplication(sp.nsimplify(kn) * w) for kn in k) + (a4,)
    d = (FieldOperator.zero(),) * 3 + (d4,)

    c40 = build_generators("dirac_c40")
    xi = build_generators("xi_c03")
    lifted = [lift_clifford(c40[j]) for j in range(1, 5)]
    hats = [lift_clifford(m) for m in hat_products(c40)]

    def rows(ops, alpha):
        if alpha == 4:
            return ops
        weights = xi[alpha].real
        return tuple(_combo(ops, [int(round(wv)) for wv in weights[i]]) for i in range(4))

    charges = []
    for alpha in range(1, 5):
        aa, dd = rows(a, alpha), rows(d, alpha)
        q = FieldOperator.zero()
        for j in range(4):
            q = q + FieldOperator.matrix(lifted[j]) @ aa[j] + FieldOperator.matrix(sp.I * hats[j]) @ dd[j]
        charges.append(q * (1 / sp.sqrt(2)))
    root = 1 / sp.sqrt(2)
    ladder = {
        ("+", 1): (charges[3] - charges[0] * sp.I) * root,
        ("-", 1): (charges[3] + charges[0] * sp.I) * root,
        ("+", 2): (charges[1] - charges[2] * sp.I) * root,
        ("-", 2): (charges[1] + charges[2] * sp.I) * root,
    }

    derived = derive_matrices(c40)
    kinetic = _combo([op @ op for op in a + d], [sp.Rational(1, 2)] * 8)
    b_first = (
        (a[0].commutator(a[3]) + d[0].commutator(d[3])) * -sp.I - a[1].anticommutator(d[2]) + a[2].anticommutator(d[1]),
        (a[1].commutator(a[3]) + d[1].commutator(d[3])) * -sp.I - a[2].anticommutator(d[0]) + a[0].anticommutator(d[2]),
        (a[2].commutator(a[3]) + d[2].commutator(d[3])) * -sp.I - a[0].anticommutator(d[1]) + a[1].anticommutator(d[0]),
    )
    h = kinetic
    for b_l, (g1, g2) in zip(b_first, B_GAMMAS):
        h = h + FieldOperator.matrix(lift_clifford(derived.gamma_at(*g1) + derived.gamma_at(*g2))) @ b_l
    chiral = _combo([x_.commutator(y_) for x_, y_ in zip(a, d)], [1, 1, 1, 1])
    h = h + FieldOperator.matrix(lift_clifford(derived.chirality) * sp.I / 2) @ chiral

    logger.debug(f"3D realization W={w}, gauge {kind}, k={k}")
    return Realization3D(w, tuple(k), (kind, b0), potential, f, tau, a, d, ladder, h)
