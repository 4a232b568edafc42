"""Generalized Laguerre polynomials and the Bessel function J by series."""

import math
from fractions import Fraction

import numpy as np
from scipy.special import gamma

from ..base.utils import as_fraction
from ..exceptions import OutOfRegime
from ..ring import QuasiPoly

MAX_LAGUERRE = 60
MAX_BESSEL_X = 30.0
MAX_BESSEL_ORDER = 10.0
BESSEL_TERMS = 400


def laguerre(n: int, a, u):
    """L^a_n(u) by the three-term recurrence; ``u`` scalar or array."""
    if not 0 <= n <= MAX_LAGUERRE:
        raise OutOfRegime(f"Laguerre degree {n} outside 0..{MAX_LAGUERRE}")
    a = float(a)
    u = np.asarray(u, dtype=float)
    previous, current = np.ones_like(u), 1.0 + a - u
    if n == 0:
        return previous if previous.ndim else float(previous)
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + a - u) * current - (k + a) * previous) / (k + 1)
    return current if current.ndim else float(current)


def laguerre_coefficients(n: int, a) -> list:
    """Exact c_j of L^a_n(u) = sum_j c_j u^j, c_j = (-1)^j binom(n + a, n - j) / j!."""
    if not 0 <= n <= MAX_LAGUERRE:
        raise OutOfRegime(f"Laguerre degree {n} outside 0..{MAX_LAGUERRE}")
    a = as_fraction(a)
    coefficients = []
    for j in range(n + 1):
        binomial = Fraction(1)
        for m in range(1, n - j + 1):
            binomial *= (a + j + m) / m
        coefficients.append((-1) ** j * binomial / math.factorial(j))
    return coefficients


def laguerre_qp(n: int, a, omega: float = 1.0) -> QuasiPoly:
    """L^a_n(ωx^2) as a polynomial in the ring."""
    return QuasiPoly.polynomial(
        {2 * j: float(c) * omega**j for j, c in enumerate(laguerre_coefficients(n, a)) if c}
    )


def _check_bessel(lam, x):
    if lam < 0 or lam > MAX_BESSEL_ORDER:
        raise OutOfRegime(f"Bessel order {lam} outside [0, {MAX_BESSEL_ORDER}]")
    if x <= 0 or x > MAX_BESSEL_X:
        raise OutOfRegime(f"Bessel argument {x} outside (0, {MAX_BESSEL_X}]")


def _bessel_scalar(lam, x: float) -> float:
    _check_bessel(lam, x)
    order = as_fraction(lam)
    # exact rational series sum_m (-(x/2)^2)^m / (m! (λ+1)_m); the float
    # prefactor (x/2)^λ / Γ(λ+1) is applied once at the end
    quarter = -(as_fraction(float(x)) / 2) ** 2
    term = Fraction(1)
    total = Fraction(1)
    for m in range(1, BESSEL_TERMS):
        term = term * quarter / (m * (order + m))
        total += term
        if m > x and abs(float(term)) < 1e-30:
            break
    return float(total) * (x / 2) ** float(order) / gamma(float(order) + 1)


def bessel_j(lam, x):
    """J_λ(x) for 0 <= λ <= 10 and 0 < x <= 30; ``x`` scalar or array."""
    if np.ndim(x) == 0:
        return _bessel_scalar(lam, float(x))
    xs = np.asarray(x, dtype=float)
    return np.array([_bessel_scalar(lam, float(v)) for v in xs.ravel()]).reshape(xs.shape)


def bessel_state(lam, energy: float):
    """ψ(x) = √x J_λ(x √(2E)), the scattering state of (λ^2 - 1/4)/(2x^2)."""
    kappa = math.sqrt(2 * energy)

    def psi(x):
        return np.sqrt(x) * bessel_j(lam, np.asarray(x, dtype=float) * kappa)

    return psi
