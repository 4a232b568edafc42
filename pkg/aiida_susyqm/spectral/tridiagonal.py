"""Real symmetric tridiagonal eigensolvers.

``ql_implicit`` is the implicit-shift QL sweep (EISPACK imtql2) and returns
the full spectrum; it is quadratic in the matrix size per eigenvalue set, so
large FD matrices go through Sturm-sequence bisection for the lowest levels
with eigenvectors by inverse iteration instead.
"""

import math
from typing import Literal, Optional

import numpy as np

from ..base.utils import get_logger
from ..exceptions import ConvergenceFailure

logger = get_logger("spectral.tridiagonal")

QL_ITERATIONS = 30
AUTO_THRESHOLD = 512
EPS = np.finfo(float).eps

Method = Literal["auto", "ql", "bisection"]


def ql_implicit(diagonal, offdiagonal, vectors: bool = False, max_iter: int = QL_ITERATIONS):
    """All eigenvalues (ascending) and optionally the eigenvector columns.

    ``offdiagonal[i]`` couples rows i and i+1; length n-1.
    """
    d = np.array(diagonal, dtype=float)
    n = len(d)
    e = np.zeros(n)
    e[: n - 1] = offdiagonal
    z = np.eye(n) if vectors else None

    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m + 1 < n and abs(e[m]) > EPS * (abs(d[m]) + abs(d[m + 1])):
                m += 1
            if m == l:
                break
            if iterations >= max_iter:
                raise ConvergenceFailure(f"QL sweep did not converge for eigenvalue {l} after {max_iter} iterations")
            iterations += 1

            g = (d[l + 1] - d[l]) / (2 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s, c, p = 1.0, 1.0, 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) > abs(g):
                    c = g / f
                    r = math.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = math.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    # Givens rotation of columns i, i+1
                    zi, zj = z[:, i].copy(), z[:, i + 1].copy()
                    z[:, i + 1] = s * zi + c * zj
                    z[:, i] = c * zi - s * zj
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    if z is None:
        return d[order], None
    return d[order], z[:, order]


def sturm_count(diagonal: np.ndarray, offdiagonal: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each shift."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    e2 = np.asarray(offdiagonal, dtype=float) ** 2
    pivmin = EPS * max(1.0, float(np.max(e2, initial=0.0)))
    q = diagonal[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(int)
    for i in range(1, len(diagonal)):
        q = diagonal[i] - shifts - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def gershgorin(diagonal: np.ndarray, offdiagonal: np.ndarray) -> tuple:
    radius = np.zeros(len(diagonal))
    radius[:-1] += np.abs(offdiagonal)
    radius[1:] += np.abs(offdiagonal)
    return float(np.min(diagonal - radius)), float(np.max(diagonal + radius))


def bisect_lowest(diagonal, offdiagonal, count: int, tol: Optional[float] = None) -> np.ndarray:
    """The ``count`` lowest eigenvalues by simultaneous Sturm bisection."""
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    lo_bound, hi_bound = gershgorin(d, e)
    scale = max(abs(lo_bound), abs(hi_bound), 1.0)
    tol = tol or 4 * EPS * scale
    lo = np.full(count, lo_bound)
    hi = np.full(count, hi_bound)
    index = np.arange(count)
    steps = int(math.ceil(math.log2((hi_bound - lo_bound) / tol))) + 1
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        below = sturm_count(d, e, mid) > index
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    if np.any(hi - lo > 2 * tol):
        raise ConvergenceFailure("bisection did not reach the requested tolerance")
    return 0.5 * (lo + hi)


def _thomas(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = len(diag)
    x = np.zeros(n)
    b = diag.copy()
    y = rhs.copy()
    for i in range(1, n):
        w = lower[i - 1] / b[i - 1]
        b[i] -= w * upper[i - 1]
        y[i] -= w * y[i - 1]
    x[-1] = y[-1] / b[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (y[i] - upper[i] * x[i + 1]) / b[i]
    return x


def inverse_iteration(diagonal, offdiagonal, eigenvalue: float, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for an isolated eigenvalue, fixed sign at its largest entry."""
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    shift = eigenvalue + 1e3 * EPS * max(1.0, abs(eigenvalue))
    shifted = d - shift
    shifted = np.where(shifted == 0.0, EPS, shifted)
    v = np.ones(len(d)) / math.sqrt(len(d))
    for _ in range(iterations):
        v = _thomas(e, shifted, e, v)
        v /= np.linalg.norm(v)
    return v * np.sign(v[np.argmax(np.abs(v))])


def eigh_tridiagonal(
    diagonal,
    offdiagonal,
    count: Optional[int] = None,
    vectors: bool = False,
    method: Method = "auto",
):
    """Lowest ``count`` eigenpairs of a symmetric tridiagonal matrix."""
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    n = len(d)
    if len(e) != n - 1:
        raise ValueError(f"off-diagonal of length {len(e)} does not match diagonal of length {n}")
    count = n if count is None else count
    if method == "auto":
        method = "ql" if n <= AUTO_THRESHOLD else "bisection"
    logger.debug(f"Tridiagonal solve n={n} count={count} method={method}")
    if method == "ql":
        values, z = ql_implicit(d, e, vectors)
        return values[:count], (z[:, :count] if vectors else None)
    if method == "bisection":
        values = bisect_lowest(d, e, count)
        z = None
        if vectors:
            z = np.column_stack([inverse_iteration(d, e, v) for v in values])
        return values, z
    raise ValueError(f"Method {method} is not supported.")
