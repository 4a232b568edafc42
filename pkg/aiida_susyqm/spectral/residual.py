from typing import Callable, Optional, Union

import numpy as np

from ..operators import SpinorOperator
from ..ring import QuasiPoly
from .special import bessel_j

RICHARDSON_STEP = 5e-3
RESIDUAL_GRID = np.linspace(0.5, 5.0, 91)


def richardson_derivative(f: Callable, xs: np.ndarray, order: int, step: float = RICHARDSON_STEP) -> np.ndarray:
    """First or second derivative from central differences at h and h/2, Richardson-extrapolated."""

    def central(h):
        if order == 1:
            return (f(xs + h) - f(xs - h)) / (2 * h)
        if order == 2:
            return (f(xs + h) - 2 * f(xs) + f(xs - h)) / h**2
        raise ValueError(f"Derivative order {order} is not supported.")

    return (4 * central(step / 2) - central(step)) / 3


def eigen_residual(
    h_sector: SpinorOperator,
    psi: Union[QuasiPoly, Callable],
    energy: float,
    points: Optional[np.ndarray] = None,
) -> float:
    """|Hψ - Eψ| for a scalar operator H.

    Ring states give the largest coefficient of Hψ - Eψ relative to that of ψ,
    which is exactly zero for an eigenfunction. Callables give the sup over
    ``points`` with derivatives by Richardson extrapolation.
    """
    if h_sector.dim != 1:
        raise ValueError("eigen_residual needs a scalar sector operator")
    if isinstance(psi, QuasiPoly):
        if psi.is_zero():
            raise ValueError("eigen_residual of the zero state")
        out = QuasiPoly.zero()
        for order in range(h_sector.order + 1):
            coeff = h_sector.coefficient(order)
            if coeff:
                out = out + coeff * psi.derivative(order)
        return (out - psi.scale(energy)).max_abs_coeff() / psi.max_abs_coeff()
    xs = RESIDUAL_GRID if points is None else np.asarray(points, dtype=float)
    total = -energy * np.asarray(psi(xs), dtype=complex)
    for order in range(h_sector.order + 1):
        coeff = h_sector.coefficient(order)
        if not coeff:
            continue
        values = psi(xs) if order == 0 else richardson_derivative(psi, xs, order)
        total = total + np.asarray(coeff.eval(xs), dtype=complex) * values
    return float(np.max(np.abs(total)))


def bessel_ode_residual(lam, xs: np.ndarray) -> float:
    """sup |x^2 J'' + x J' + (x^2 - λ^2) J| over ``xs``."""
    xs = np.asarray(xs, dtype=float)

    def j(x):
        return bessel_j(lam, x)

    residual = xs**2 * richardson_derivative(j, xs, 2) + xs * richardson_derivative(j, xs, 1)
    residual += (xs**2 - float(lam) ** 2) * j(xs)
    return float(np.max(np.abs(residual)))
