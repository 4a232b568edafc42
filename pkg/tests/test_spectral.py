import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from aiida_susyqm.exceptions import AmbiguousCluster, OutOfRegime, PoleOnGrid
from aiida_susyqm.ring import QuasiPoly
from aiida_susyqm.spectral import (
    Grid,
    bessel_j,
    bessel_ode_residual,
    bessel_state,
    bisect_lowest,
    convergence_study,
    degeneracy_cluster,
    eigen_residual,
    eigh_tridiagonal,
    fd_eigen,
    laguerre,
    laguerre_coefficients,
    laguerre_qp,
    level_diagram,
    ql_implicit,
    split_inverse_square,
    sturm_count,
)
from aiida_susyqm.superconformal import build_system, expected_energies

HARMONIC = QuasiPoly.monomial(0.5, s=2)


def random_tridiagonal(n, seed=5):
    rng = np.random.default_rng(seed)
    return rng.normal(size=n), rng.normal(size=n - 1)


def test_odd_oscillator_levels():
    values = fd_eigen(HARMONIC, Grid(n_points=2000), count=3)
    assert values == pytest.approx([1.5, 3.5, 5.5], abs=1e-4)


def test_full_line_oscillator_levels():
    values = fd_eigen(HARMONIC, Grid("full_line", length=10.0, n_points=2000), count=3)
    assert values == pytest.approx([0.5, 1.5, 2.5], abs=1e-3)


def test_oscillator_sector_levels(oscillator):
    for sector in (1, 2, 3, 4):
        values = fd_eigen(oscillator.sector(sector), Grid(n_points=2000), count=4)
        assert values == pytest.approx(expected_energies(3, 1.0, sector), abs=5e-3)


def test_oscillator_degeneracy_pattern(oscillator):
    levels = {sector: fd_eigen(oscillator.sector(sector), Grid(n_points=2000), count=4) for sector in (1, 2, 3, 4)}
    closed = {sector: expected_energies(3, 1.0, sector) for sector in (1, 2, 3, 4)}
    report = degeneracy_cluster(levels, tol=0.05, closed_form=closed)
    assert report.pattern == [1, 4, 4, 4, 3]
    assert report.clusters[0].sectors == [4]
    assert report.max_error() < 5e-3
    rows = report.to_csv().splitlines()
    assert rows[0] == "sector,level_index,E_numeric,E_closed_form,abs_error"
    assert [float(row.split(",")[3]) for row in rows[1:6]] == [0.0, 2.0, 2.0, 2.0, 2.0]


def test_second_order_convergence():
    study = convergence_study(HARMONIC, [1.5, 3.5, 5.5])
    (ratios,) = study.ratios
    assert len(ratios) == 3
    assert all(3.5 <= r <= 4.5 for r in ratios)
    assert study.to_csv().startswith("h,level,error\n")


@pytest.mark.parametrize("sector", [1, 2, 3, 4])
def test_oscillator_sector_convergence(oscillator, sector):
    study = convergence_study(oscillator.sector(sector), expected_energies(2, 1.0, sector))
    (ratios,) = study.ratios
    assert len(ratios) == 3
    for level, ratio in enumerate(ratios):
        if sector in (1, 2) and level == 0:
            # h^2 term cancels for the x^{3/2} e^{-x^2/2} ground state
            assert ratio > 10.0
        else:
            assert 3.5 <= ratio <= 4.5, (sector, level, ratio)


def test_inverse_square_split():
    c, smooth = split_inverse_square(QuasiPoly.polynomial({-2: 0.375, 2: 0.5}))
    assert c == pytest.approx(0.375)
    assert smooth == HARMONIC


def test_pole_on_full_line():
    with pytest.raises(PoleOnGrid):
        fd_eigen(QuasiPoly.monomial(1.0, s=-2), Grid("full_line", n_points=400), count=2)


def test_sector_operator_must_be_schrodinger(inverse_system):
    with pytest.raises(ValueError):
        fd_eigen(inverse_system.h, count=2)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid("circle")
    with pytest.raises(ValueError):
        Grid(n_points=4)
    assert Grid(n_points=100).refine().n_points == 200


def test_ql_matches_reference():
    d, e = random_tridiagonal(60)
    values, vectors = ql_implicit(d, e, vectors=True)
    reference = scipy.linalg.eigh_tridiagonal(d, e, eigvals_only=True)
    assert np.allclose(values, reference, atol=1e-10)
    matrix = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    assert np.allclose(matrix @ vectors, vectors * values, atol=1e-9)


def test_bisection_matches_ql():
    d, e = random_tridiagonal(80, seed=9)
    ql, _ = ql_implicit(d, e)
    assert np.allclose(bisect_lowest(d, e, 6), ql[:6], atol=1e-10)
    values, vectors = eigh_tridiagonal(d, e, 3, vectors=True, method="bisection")
    assert vectors.shape == (80, 3)
    assert np.allclose(np.linalg.norm(vectors, axis=0), 1.0)


def test_sturm_count():
    d, e = random_tridiagonal(40, seed=2)
    values, _ = ql_implicit(d, e)
    shifts = [values[0] - 1.0, 0.5 * (values[9] + values[10])]
    assert list(sturm_count(d, e, shifts)) == [0, 10]


def test_unknown_solver():
    d, e = random_tridiagonal(10)
    with pytest.raises(ValueError, match="not supported"):
        eigh_tridiagonal(d, e, method="jacobi")


def test_laguerre_polynomials():
    assert laguerre_coefficients(1, 0) == [1, -1]
    assert laguerre_coefficients(2, 1) == [3, -3, Fraction(1, 2)]
    assert laguerre(2, 1, 0.5) == pytest.approx(1.625)
    assert laguerre_qp(1, 0) == QuasiPoly.polynomial({0: 1.0, 2: -1.0})
    us = np.linspace(0, 5, 11)
    assert np.allclose(laguerre(5, 1, us), np.polyval(np.array(laguerre_coefficients(5, 1), dtype=float)[::-1], us))


def test_bessel_values():
    assert bessel_j(Fraction(1, 2), 1.0) == pytest.approx(0.6713967, abs=1e-7)
    assert bessel_j(0, 2.0) == pytest.approx(0.2238907791, abs=1e-9)
    expected = math.sqrt(2 / math.pi) * (math.sin(1) - math.cos(1))
    assert bessel_j(Fraction(3, 2), 1.0) == pytest.approx(expected, abs=1e-12)


def test_half_integer_bessel_closed_form():
    xs = np.linspace(0.5, 20.0, 40)
    closed = np.sqrt(2 / (np.pi * xs)) * np.sin(xs)
    assert np.max(np.abs(bessel_j(Fraction(1, 2), xs) - closed)) < 1e-10


def test_bessel_regime():
    with pytest.raises(OutOfRegime):
        bessel_j(11, 1.0)
    with pytest.raises(OutOfRegime):
        bessel_j(1, 31.0)


def test_bessel_ode():
    xs = np.linspace(0.5, 5.0, 46)
    for lam in (0, Fraction(1, 2), 2):
        assert bessel_ode_residual(lam, xs) < 1e-7


@pytest.mark.parametrize(
    "sector,lam,energy",
    [(1, Fraction(1, 2), 1.0), (2, Fraction(1, 2), 1.0), (4, Fraction(3, 2), 0.5), (4, Fraction(3, 2), 2.0)],
)
def test_scattering_states(sector, lam, energy):
    system = build_system("example1", k=0.5)
    assert eigen_residual(system.sector(sector), bessel_state(lam, energy), energy) < 1e-8


def test_cluster_edge_cases():
    assert degeneracy_cluster([[0.0], [1.0]], tol=0.1).pattern == [1, 1]
    assert degeneracy_cluster([[0.0, 1.0], [0.01]], tol=0.1).pattern == [2, 1]
    with pytest.raises(ValueError):
        degeneracy_cluster([[0.0]], tol=0.0)


def test_ambiguous_cluster():
    with pytest.raises(AmbiguousCluster):
        degeneracy_cluster([[0.0, 0.16], [0.08]], tol=0.1)


def test_level_diagram():
    text = level_diagram({"Y3=0": [2.0, 2.0], "Y3=-1": [0.0]})
    lines = text.splitlines()
    assert "Y3=0" in lines[0]
    assert "x2" in lines[1]
    assert lines[-1].strip().startswith("0.000")
