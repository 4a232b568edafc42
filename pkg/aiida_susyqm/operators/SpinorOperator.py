"""Differential operators  sum M (x) x^s e^{ax-bx^2} (d/dx)^k  on spinor fields.

An operator is stored canonically as a map from (order, exponent key) to a
complex matrix; every composition is re-expanded with the Leibniz rule, so
``d o x`` and ``x o d + 1`` have identical canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Literal, Optional

import numpy as np

from ..exceptions import DimensionMismatch, OrderOverflow
from ..ring import Exponent, QuasiPoly
from ..ring.quasipoly import MERGE_TOL
from .fields import SpinorField

MAX_ORDER = 3

ONE_KEY = (Exponent(), Fraction(0), Fraction(0))


def _key_mul(k1, k2):
    return (k1[0].plus(k2[0]), k1[1] + k2[1], k1[2] + k2[2])


@lru_cache(maxsize=4096)
def _monomial_derivative(key, r: int) -> tuple:
    """(key, coeff) pairs of d^r/dx^r of the unit monomial ``key``."""
    poly = QuasiPoly([(key, 1.0)]).derivative(r)
    return tuple(poly.items())


def _join_domain(d1, d2):
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise DimensionMismatch(f"operators live on different domains ({d1}, {d2})")


class _Accumulator:
    def __init__(self, dim: int):
        self.dim = dim
        self.sums: dict = {}
        self.scales: dict = {}

    def add(self, term, matrix: np.ndarray, weight: complex = 1.0):
        contribution = matrix if weight == 1.0 else matrix * weight
        scale = float(np.max(np.abs(contribution)))
        if scale == 0.0:
            return
        if term in self.sums:
            self.sums[term] = self.sums[term] + contribution
            self.scales[term] = max(self.scales[term], scale)
        else:
            self.sums[term] = contribution
            self.scales[term] = scale

    def result(self) -> dict:
        return {
            term: m
            for term, m in self.sums.items()
            if float(np.max(np.abs(m))) > MERGE_TOL * self.scales[term]
        }


class SpinorOperator:
    __slots__ = ("_terms", "dim", "domain")

    def __init__(self, terms: dict, dim: int, domain: Optional[str] = None):
        self._terms = terms
        self.dim = dim
        self.domain = domain

    # construction

    @classmethod
    def from_terms(cls, terms: Iterable, dim: int, domain: Optional[str] = None) -> "SpinorOperator":
        """From ``(matrix, QuasiPoly coefficient, order)`` triples."""
        acc = _Accumulator(dim)
        for matrix, coeff, order in terms:
            matrix = np.asarray(matrix, dtype=complex).reshape(dim, dim)
            for key, c in coeff.items():
                acc.add((order, key), matrix, c)
        return cls(acc.result(), dim, domain)

    @classmethod
    def zero(cls, dim: int = 1, domain: Optional[str] = None) -> "SpinorOperator":
        return cls({}, dim, domain)

    @classmethod
    def identity(cls, dim: int = 1, domain: Optional[str] = None) -> "SpinorOperator":
        return cls({(0, ONE_KEY): np.eye(dim, dtype=complex)}, dim, domain)

    @classmethod
    def constant_matrix(cls, matrix, domain: Optional[str] = None) -> "SpinorOperator":
        matrix = np.asarray(matrix, dtype=complex)
        return cls.from_terms([(matrix, QuasiPoly.constant(1.0), 0)], matrix.shape[0], domain)

    @classmethod
    def multiplication(cls, f: QuasiPoly, matrix=None, dim: int = 1, domain: Optional[str] = None):
        if matrix is None:
            matrix = np.eye(dim, dtype=complex)
        matrix = np.asarray(matrix, dtype=complex)
        return cls.from_terms([(matrix, f, 0)], matrix.shape[0], domain)

    @classmethod
    def d(cls, order: int = 1, dim: int = 1, domain: Optional[str] = None) -> "SpinorOperator":
        return cls({(order, ONE_KEY): np.eye(dim, dtype=complex)}, dim, domain)

    @classmethod
    def momentum(cls, dim: int = 1, domain: Optional[str] = None) -> "SpinorOperator":
        """p = -i d/dx."""
        return cls({(1, ONE_KEY): -1j * np.eye(dim, dtype=complex)}, dim, domain)

    @classmethod
    def position(cls, power=1, dim: int = 1, domain: Optional[str] = None) -> "SpinorOperator":
        return cls.multiplication(QuasiPoly.monomial(1.0, s=power), dim=dim, domain=domain)

    # structure

    @property
    def terms(self) -> list:
        return [(order, key, m) for (order, key), m in sorted(self._terms.items(), key=lambda kv: kv[0])]

    @property
    def order(self) -> int:
        return max((order for order, _ in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs_coeff(self) -> float:
        return max((float(np.max(np.abs(m))) for m in self._terms.values()), default=0.0)

    def coefficient(self, order: int, i: int = 1, j: int = 1) -> QuasiPoly:
        """Coefficient function of (d/dx)^order in matrix entry (i, j), 1-based."""
        return QuasiPoly(
            [(key, m[i - 1, j - 1]) for (o, key), m in self._terms.items() if o == order]
        )

    def entry(self, i: int, j: int) -> "SpinorOperator":
        acc = _Accumulator(1)
        for term, m in self._terms.items():
            acc.add(term, m[i - 1 : i, j - 1 : j])
        return SpinorOperator(acc.result(), 1, self.domain)

    def embed(self, i: int, j: int, dim: int) -> "SpinorOperator":
        """Scalar operator placed at entry (i, j) of a dim x dim operator."""
        if self.dim != 1:
            raise DimensionMismatch("only scalar operators can be embedded")
        terms = {}
        for term, m in self._terms.items():
            big = np.zeros((dim, dim), dtype=complex)
            big[i - 1, j - 1] = m[0, 0]
            terms[term] = big
        return SpinorOperator(terms, dim, self.domain)

    def lift(self, matrix) -> "SpinorOperator":
        """matrix (x) self, the matrix index being the major one."""
        matrix = np.asarray(matrix, dtype=complex)
        acc = _Accumulator(matrix.shape[0] * self.dim)
        for term, m in self._terms.items():
            acc.add(term, np.kron(matrix, m))
        return SpinorOperator(acc.result(), matrix.shape[0] * self.dim, self.domain)

    # linear structure

    def _check(self, other: "SpinorOperator"):
        if not isinstance(other, SpinorOperator):
            raise TypeError(f"cannot combine SpinorOperator with {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"spinor dimensions differ ({self.dim} vs {other.dim})")
        return _join_domain(self.domain, other.domain)

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = SpinorOperator.identity(self.dim) * other
        domain = self._check(other)
        acc = _Accumulator(self.dim)
        for term, m in self._terms.items():
            acc.add(term, m)
        for term, m in other._terms.items():
            acc.add(term, m)
        return SpinorOperator(acc.result(), self.dim, domain)

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if not isinstance(c, (int, float, complex, np.number)):
            return NotImplemented
        c = complex(c)
        if c == 0:
            return SpinorOperator({}, self.dim, self.domain)
        return SpinorOperator({t: m * c for t, m in self._terms.items()}, self.dim, self.domain)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / complex(c))

    # composition

    def __matmul__(self, other: "SpinorOperator") -> "SpinorOperator":
        domain = self._check(other)
        acc = _Accumulator(self.dim)
        for (k1, key1), m1 in self._terms.items():
            for (k2, key2), m2 in other._terms.items():
                m = m1 @ m2
                if not m.any():
                    continue
                for r in range(k1 + 1):
                    binom = comb(k1, r)
                    for key_r, c_r in _monomial_derivative(key2, r):
                        acc.add((k1 - r + k2, _key_mul(key1, key_r)), m, binom * c_r)
        return SpinorOperator(acc.result(), self.dim, domain)

    def commutator(self, other: "SpinorOperator") -> "SpinorOperator":
        return self @ other - other @ self

    def anticommutator(self, other: "SpinorOperator") -> "SpinorOperator":
        return self @ other + other @ self

    def adjoint(self) -> "SpinorOperator":
        """Formal adjoint for the flat inner product, boundary terms dropped."""
        acc = _Accumulator(self.dim)
        for (k, key), m in self._terms.items():
            dagger = m.conj().T * (-1.0) ** k
            for r in range(k + 1):
                for key_r, c_r in _monomial_derivative(key, r):
                    acc.add((k - r, key_r), dagger, comb(k, r) * c_r)
        return SpinorOperator(acc.result(), self.dim, self.domain)

    # action

    def apply(self, field: SpinorField) -> SpinorField:
        if field.dim != self.dim:
            raise DimensionMismatch(f"operator of dim {self.dim} applied to field of dim {field.dim}")
        top = self.order
        derivatives = [[c] for c in field.components]
        for comp in derivatives:
            for _ in range(top):
                comp.append(comp[-1].derivative())
        pairs = [[] for _ in range(self.dim)]
        for (k, key), m in self._terms.items():
            rows, cols = np.nonzero(m)
            for i, j in zip(rows, cols):
                for key_f, c_f in derivatives[j][k].items():
                    pairs[i].append((_key_mul(key, key_f), m[i, j] * c_f))
        return SpinorField(tuple(QuasiPoly(p) for p in pairs), field.domain)

    def __call__(self, field: SpinorField) -> SpinorField:
        return self.apply(field)

    # comparison and display

    def equals(self, other: "SpinorOperator", tol: float = 1e-12) -> bool:
        diff = self - other
        return diff.max_abs_coeff() <= tol * (1.0 + max(self.max_abs_coeff(), other.max_abs_coeff()))

    def describe(self, i: int = 1, j: int = 1) -> str:
        """Text form of one matrix entry, highest derivative first."""
        parts = []
        for order in range(self.order, -1, -1):
            coeff = self.coefficient(order, i, j)
            if coeff.is_zero():
                continue
            inner = repr(coeff)[len("QuasiPoly(") : -1]
            parts.append(f"({inner})" + (f"*d^{order}" if order else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SpinorOperator(dim={self.dim}, order={self.order}, terms={len(self._terms)})"


def op_algebra(
    a: SpinorOperator,
    b,
    op: Literal["add", "compose", "commutator", "anticommutator", "scale"],
) -> SpinorOperator:
    if op == "add":
        result = a + b
    elif op == "compose":
        result = a @ b
    elif op == "commutator":
        result = a.commutator(b)
    elif op == "anticommutator":
        result = a.anticommutator(b)
    elif op == "scale":
        result = a * b
    else:
        raise ValueError(f"Operation {op} is not supported.")
    if result.order > MAX_ORDER:
        raise OrderOverflow(f"{op} produced derivative order {result.order} > {MAX_ORDER}")
    return result


def apply(op: SpinorOperator, field: SpinorField) -> SpinorField:
    return op.apply(field)


def formal_adjoint(op: SpinorOperator) -> SpinorOperator:
    return op.adjoint()


def scalar(f: QuasiPoly, domain: Optional[str] = None) -> SpinorOperator:
    return SpinorOperator.multiplication(f, domain=domain)


def matrix_operator(entries: dict, dim: int = 4, domain: Optional[str] = None) -> SpinorOperator:
    """Assemble from ``{(i, j): scalar operator}`` with 1-based indices."""
    result = SpinorOperator.zero(dim, domain)
    for (i, j), op in entries.items():
        result = result + op.embed(i, j, dim)
    return result
