"""Exact ring of quasi-polynomials  sum_j c_j x^{s_j} e^{a_j x - b_j x^2}.

Exponent keys (s, a, b) are exact rationals and compare exactly; the power
``s`` may also carry a formal part ``r*k`` for one symbolic parameter k
(the coupling of W = k/x). Coefficients are complex floats merged with a
relative cancellation tolerance.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, NamedTuple, Optional, Union

import numpy as np
from scipy.special import gamma

from ..base.utils import as_fraction
from ..exceptions import MixedSigns, PoleAtZero, UnboundParameter

MERGE_TOL = 1e-12
EQUAL_TOL = 1e-12

Domain = Literal["half_line", "full_line"]

_EXPONENT_RE = re.compile(
    r"^\s*(?P<const>[-+]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[-+])?\s*(?P<kcoeff>\d+(?:/\d+)?)?\s*\*?\s*k)?\s*$"
)


@dataclass(frozen=True, order=True)
class Exponent:
    """Power of x of the form ``const + k_coeff * k``."""

    const: Fraction = Fraction(0)
    k_coeff: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, value) -> "Exponent":
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str) and "k" in value:
            return cls.parse(value)
        return cls(as_fraction(value))

    @classmethod
    def parse(cls, text: str) -> "Exponent":
        match = _EXPONENT_RE.match(text.replace(" ", ""))
        if match is None or not text.strip():
            raise ValueError(f"malformed exponent {text!r}")
        const = Fraction(match["const"]) if match["const"] else Fraction(0)
        k_coeff = Fraction(0)
        if "k" in text:
            k_coeff = Fraction(match["kcoeff"]) if match["kcoeff"] else Fraction(1)
            if match["sign"] == "-":
                k_coeff = -k_coeff
        return cls(const, k_coeff)

    @property
    def is_formal(self) -> bool:
        return self.k_coeff != 0

    def plus(self, other: "Exponent") -> "Exponent":
        return Exponent(self.const + other.const, self.k_coeff + other.k_coeff)

    def shift(self, q) -> "Exponent":
        return Exponent(self.const + as_fraction(q), self.k_coeff)

    def negate(self) -> "Exponent":
        return Exponent(-self.const, -self.k_coeff)

    def bind(self, kappa: Optional[Fraction]) -> "Exponent":
        if kappa is None or not self.is_formal:
            return self
        return Exponent(self.const + self.k_coeff * kappa)

    def value(self) -> Fraction:
        if self.is_formal:
            raise UnboundParameter(f"exponent {self} depends on an unbound k")
        return self.const

    def __str__(self):
        text = str(self.const)
        if self.is_formal:
            sign = "+" if self.k_coeff > 0 else "-"
            text += f"{sign}{abs(self.k_coeff)}*k"
        return text


Key = tuple[Exponent, Fraction, Fraction]


class Term(NamedTuple):
    coeff: complex
    s: Exponent
    a: Fraction
    b: Fraction

    @property
    def key(self) -> Key:
        return (self.s, self.a, self.b)


@dataclass(frozen=True)
class NormResult:
    """Verdict of ``norm_squared``: finite value or divergence location."""

    verdict: Literal["finite", "divergent"]
    value: Optional[float] = None
    at: Optional[Literal["at_zero", "at_infinity"]] = None

    @classmethod
    def finite(cls, value: float) -> "NormResult":
        return cls("finite", float(value))

    @classmethod
    def divergent(cls, at: str) -> "NormResult":
        return cls("divergent", None, at)

    @property
    def is_finite(self) -> bool:
        return self.verdict == "finite"

    def to_dict(self) -> dict:
        if self.is_finite:
            return {"verdict": "finite", "value": self.value}
        return {"verdict": "divergent", "at": self.at}


def _join_kappa(k1: Optional[Fraction], k2: Optional[Fraction]) -> Optional[Fraction]:
    if k1 is None:
        return k2
    if k2 is None or k1 == k2:
        return k1
    raise ValueError(f"incompatible k bindings {k1} and {k2}")


def _canonical(pairs: Iterable[tuple[Key, complex]], kappa: Optional[Fraction]) -> dict[Key, complex]:
    sums: dict[Key, complex] = {}
    scales: dict[Key, float] = {}
    for (s, a, b), c in pairs:
        key = (s.bind(kappa), a, b)
        sums[key] = sums.get(key, 0j) + complex(c)
        scales[key] = max(scales.get(key, 0.0), abs(c))
    return {key: c for key, c in sums.items() if c != 0 and abs(c) > MERGE_TOL * scales[key]}


class QuasiPoly:
    """Immutable canonical element of the quasi-polynomial ring."""

    __slots__ = ("_terms", "_kappa")

    def __init__(self, terms: Union[dict, Iterable[tuple[Key, complex]], None] = None, kappa=None):
        if kappa is not None:
            kappa = as_fraction(kappa)
        pairs = terms.items() if isinstance(terms, dict) else (terms or ())
        self._terms = _canonical(pairs, kappa)
        self._kappa = kappa

    # construction

    @classmethod
    def monomial(cls, coeff=1.0, s=0, a=0, b=0, kappa=None) -> "QuasiPoly":
        key = (Exponent.coerce(s), as_fraction(a), as_fraction(b))
        return cls([(key, coeff)], kappa=kappa)

    @classmethod
    def constant(cls, c) -> "QuasiPoly":
        return cls.monomial(c)

    @classmethod
    def zero(cls) -> "QuasiPoly":
        return cls()

    @classmethod
    def polynomial(cls, coeffs: dict, a=0, b=0, kappa=None) -> "QuasiPoly":
        """``{power: coeff}`` times the common factor e^{ax - bx^2}."""
        a, b = as_fraction(a), as_fraction(b)
        return cls([((Exponent.coerce(s), a, b), c) for s, c in coeffs.items()], kappa=kappa)

    # inspection

    @property
    def kappa(self) -> Optional[Fraction]:
        return self._kappa

    @property
    def terms(self) -> tuple[Term, ...]:
        return tuple(Term(c, *key) for key, c in sorted(self._terms.items(), key=lambda kv: kv[0]))

    def items(self):
        return self._terms.items()

    def coeff(self, s=0, a=0, b=0) -> complex:
        return self._terms.get((Exponent.coerce(s).bind(self._kappa), as_fraction(a), as_fraction(b)), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    @property
    def is_formal(self) -> bool:
        return any(s.is_formal for s, _, _ in self._terms)

    def min_power(self) -> Fraction:
        return min((s.value() for s, _, _ in self._terms), default=Fraction(0))

    # ring operations

    def _lift(self, other) -> "QuasiPoly":
        if isinstance(other, QuasiPoly):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return QuasiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        kappa = _join_kappa(self._kappa, other._kappa)
        return QuasiPoly([*self._terms.items(), *other._terms.items()], kappa=kappa)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QuasiPoly":
        c = complex(c)
        if c == 0:
            return QuasiPoly(kappa=self._kappa)
        return QuasiPoly({k: v * c for k, v in self._terms.items()}, kappa=self._kappa)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        if not isinstance(other, QuasiPoly):
            return NotImplemented
        kappa = _join_kappa(self._kappa, other._kappa)
        pairs = [
            ((s1.plus(s2), a1 + a2, b1 + b2), c1 * c2)
            for (s1, a1, b1), c1 in self._terms.items()
            for (s2, a2, b2), c2 in other._terms.items()
        ]
        return QuasiPoly(pairs, kappa=kappa)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = QuasiPoly.constant(1.0)
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> "QuasiPoly":
        return QuasiPoly({k: v.conjugate() for k, v in self._terms.items()}, kappa=self._kappa)

    def bind(self, kappa) -> "QuasiPoly":
        return QuasiPoly(self._terms, kappa=_join_kappa(self._kappa, as_fraction(kappa)))

    def derivative(self, order: int = 1) -> "QuasiPoly":
        result = self
        for _ in range(order):
            result = result._derivative_once()
        return result

    def _derivative_once(self) -> "QuasiPoly":
        pairs = []
        for (s, a, b), c in self._terms.items():
            power = s.value()
            if power != 0:
                pairs.append(((s.shift(-1), a, b), c * float(power)))
            if a != 0:
                pairs.append(((s, a, b), c * float(a)))
            if b != 0:
                pairs.append(((s.shift(1), a, b), -2.0 * c * float(b)))
        return QuasiPoly(pairs, kappa=self._kappa)

    # comparison

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self._terms.keys() != other._terms.keys():
            return False
        scale = 1.0 + max(self.max_abs_coeff(), other.max_abs_coeff())
        return all(abs(c - other._terms[k]) < EQUAL_TOL * scale for k, c in self._terms.items())

    __hash__ = None

    # evaluation

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Value at ``x`` (scalar or array); terms summed smallest magnitude first."""
        if np.ndim(x) == 0:
            return self._eval_scalar(float(x))
        xs = np.asarray(x, dtype=float)
        return np.array([self._eval_scalar(float(v)) for v in xs.ravel()]).reshape(xs.shape)

    def _eval_scalar(self, x: float) -> complex:
        values = []
        for (s, a, b), c in self._terms.items():
            power = s.value()
            if x == 0:
                if power < 0:
                    raise PoleAtZero(f"x^{power} is singular at x = 0")
                if power == 0:
                    values.append(c)
                continue
            if x > 0:
                values.append(c * cmath.exp(float(power) * math.log(x) + float(a) * x - float(b) * x * x))
            else:
                sign = (-1.0) ** int(power) if power.denominator == 1 else cmath.exp(1j * math.pi * float(power))
                values.append(c * sign * cmath.exp(float(power) * math.log(-x) + float(a) * x - float(b) * x * x))
        values.sort(key=abs)
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))

    # integrals

    def reflect(self) -> "QuasiPoly":
        """f(-x) written as a quasi-polynomial in x > 0."""
        pairs = []
        for (s, a, b), c in self._terms.items():
            power = s.value()
            phase = (-1.0) ** int(power) if power.denominator == 1 else cmath.exp(1j * math.pi * float(power))
            pairs.append(((s, -a, b), c * phase))
        return QuasiPoly(pairs, kappa=self._kappa)

    def norm_squared(self, domain: Domain = "half_line") -> NormResult:
        if domain == "half_line":
            return _half_line_norm(self)
        if domain == "full_line":
            right = _half_line_norm(self)
            left = _half_line_norm(self.reflect())
            for at in ("at_zero", "at_infinity"):
                if at in (right.at, left.at):
                    return NormResult.divergent(at)
            return NormResult.finite(right.value + left.value)
        raise ValueError(f"unknown domain {domain!r}")

    # serialization

    def to_json(self) -> list[dict]:
        return [
            {
                "coeff_re": t.coeff.real,
                "coeff_im": t.coeff.imag,
                "s": str(t.s),
                "a": str(t.a),
                "b": str(t.b),
            }
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, records: list[dict], kappa=None) -> "QuasiPoly":
        pairs = [
            (
                (Exponent.parse(r["s"]), Fraction(r["a"]), Fraction(r["b"])),
                complex(r["coeff_re"], r.get("coeff_im", 0.0)),
            )
            for r in records
        ]
        return cls(pairs, kappa=kappa)

    def __repr__(self):
        if not self._terms:
            return "QuasiPoly(0)"
        parts = []
        for t in self.terms:
            factor = f"x^{t.s}" if t.s != Exponent() else ""
            exp_arg = ""
            if t.a:
                exp_arg += f"{t.a}*x"
            if t.b:
                exp_arg += f"{-t.b:+}*x^2" if exp_arg else f"{-t.b}*x^2"
            gauss = f"e^({exp_arg})" if exp_arg else ""
            coeff = t.coeff.real if t.coeff.imag == 0 else t.coeff
            parts.append("*".join(p for p in (f"{coeff:g}", factor, gauss) if p))
        return "QuasiPoly(" + " + ".join(parts) + ")"


def _half_line_norm(f: QuasiPoly) -> NormResult:
    density = f * f.conjugate()
    if density.is_zero():
        return NormResult.finite(0.0)
    if any(a != 0 for _, a, _ in density._terms):
        raise MixedSigns("norm_squared supports only terms without e^{ax} factors")
    if any(b < 0 for _, _, b in density._terms):
        return NormResult.divergent("at_infinity")
    if density.min_power() <= -1:
        return NormResult.divergent("at_zero")
    # bare powers left here all have sigma > -1
    if any(b == 0 for _, _, b in density._terms):
        return NormResult.divergent("at_infinity")
    total = []
    for (s, _, b), c in density._terms.items():
        half = (float(s.value()) + 1.0) / 2.0
        total.append(c.real * gamma(half) / (2.0 * float(b) ** half))
    return NormResult.finite(math.fsum(total))


def ring_ops(f: QuasiPoly, g, op: Literal["add", "mul", "scale"]) -> QuasiPoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"Operation {op} is not supported.")


def derivative(f: QuasiPoly) -> QuasiPoly:
    return f.derivative()


def norm_squared(f: QuasiPoly, domain: Domain = "half_line") -> NormResult:
    return f.norm_squared(domain)


def x_power(s, coeff=1.0) -> QuasiPoly:
    return QuasiPoly.monomial(coeff, s=s)
