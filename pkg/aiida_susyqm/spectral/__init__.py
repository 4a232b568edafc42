from .clustering import Cluster, SpectrumReport, degeneracy_cluster, level_diagram
from .fd import ConvergenceStudy, Grid, convergence_study, fd_eigen, split_inverse_square, tridiagonal_matrix
from .residual import bessel_ode_residual, eigen_residual, richardson_derivative
from .special import bessel_j, bessel_state, laguerre, laguerre_coefficients, laguerre_qp
from .tridiagonal import bisect_lowest, eigh_tridiagonal, inverse_iteration, ql_implicit, sturm_count

__all__ = [
    "Cluster",
    "ConvergenceStudy",
    "Grid",
    "SpectrumReport",
    "bessel_j",
    "bessel_ode_residual",
    "bessel_state",
    "bisect_lowest",
    "convergence_study",
    "degeneracy_cluster",
    "eigen_residual",
    "eigh_tridiagonal",
    "fd_eigen",
    "inverse_iteration",
    "laguerre",
    "laguerre_coefficients",
    "laguerre_qp",
    "level_diagram",
    "ql_implicit",
    "richardson_derivative",
    "split_inverse_square",
    "sturm_count",
    "tridiagonal_matrix",
]
