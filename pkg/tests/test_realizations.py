import numpy as np
import pytest
import sympy as sp

from aiida_susyqm.clifford import build_generators
from aiida_susyqm.exceptions import ConstraintViolation, FormMismatch, UnsupportedGauge, ZeroSuperpotential
from aiida_susyqm.operators import SpinorOperator, identity_residual, matrix_operator, standard_test_family
from aiida_susyqm.realizations import (
    build_ad_table,
    compute_B,
    general_hamiltonian,
    hamiltonian_forms,
    parse_gauge,
    realize_1d,
    realize_3d,
    verify_ss4,
)
from aiida_susyqm.realizations.three_dim import sample_points
from aiida_susyqm.ring import QuasiPoly


@pytest.mark.parametrize("k", [(0.0, 0.0, 1.0), (1.0, 1.0, 1.0), (0.3, -0.2, 0.9)])
@pytest.mark.parametrize("w", [(1.0, 1), (1.0, -1), (2.5, -1), (0.7, 2)])
@pytest.mark.slow
def test_ss4_closes_for_monomial_superpotentials(w, k):
    r = realize_1d(w, *k)
    report = verify_ss4(r.supercharges, r.h)
    assert report.passed, report.failures()
    assert r.b[0].dim == 1


@pytest.mark.parametrize("k", [(0.0, 0.0, 1.0), (1.0, 1.0, 1.0), (0.3, -0.2, 0.9)])
@pytest.mark.parametrize("w", [(1.0, 1), (2.5, -1), (0.7, 2)])
def test_b_expressions_agree(w, k):
    r = realize_1d(w, *k, check=False)
    *_, consistency = compute_B(r.table, threshold=1e-12)
    assert consistency.passed


def test_hamiltonian_forms_agree():
    r = realize_1d((1.0, 1), 0.0, 0.0, 1.0)
    forms = hamiltonian_forms(r.table)
    assert forms["gamma"].equals(forms["wp"])
    assert forms["gamma"].equals(forms["ladder"])


def test_oscillator_sector_potentials():
    r = realize_1d((1.0, 1), 0.0, 0.0, 1.0)
    inverse_square = {2: 0.5, -2: 0.375}
    assert r.sector_potential(1) == QuasiPoly.polynomial(inverse_square)
    assert r.sector_potential(2) == QuasiPoly.polynomial(inverse_square)
    assert r.sector_potential(3) == QuasiPoly.polynomial({2: 0.5, -2: -0.125, 0: 1.0})
    assert r.sector_potential(4) == QuasiPoly.polynomial({2: 0.5, -2: -0.125, 0: -1.0})
    assert r.h.coefficient(0, 3, 4).is_zero()


def test_inverse_square_supercharge_entries():
    r = realize_1d((1.0, -1), 0.0, 0.0, 1.0, domain="full_line")
    p = SpinorOperator.momentum(domain="full_line")
    half_over_x = SpinorOperator.multiplication(QuasiPoly.monomial(0.5j, s=-1), domain="full_line")
    assert r.eta["+"].equals(p + half_over_x)
    assert r.zeta["+"].equals(p + half_over_x * 3)
    assert r.f == QuasiPoly.monomial(-0.5, s=-1)


def test_entrywise_display_matches_construction():
    for k in [(0.0, 0.0, 1.0), (0.6, 0.0, 0.8)]:
        r = realize_1d((1.0, 1), *k)
        assert all(report.passed for report in r.consistency())


def test_quasi_diagonal_couples_sectors_three_and_four():
    r = realize_1d((1.0, 1), 0.6, 0.0, 0.8)
    assert not r.is_diagonal
    assert r.h.coefficient(0, 3, 4) == QuasiPoly.monomial(0.6, s=0)
    assert r.h.coefficient(0, 4, 3) == QuasiPoly.monomial(0.6, s=0)
    assert r.x3_commutator().passed
    with pytest.raises(ValueError):
        r.intertwining()


@pytest.mark.parametrize("k", [(0.6, 0.0, 0.8), (0.3, -0.2, 0.9), (1.0, 1.0, -0.5)])
def test_block_rotation_decouples_sectors_three_and_four(k):
    r = realize_1d((1.0, 1), *k)
    u = r.block_rotation()
    assert np.allclose(u.conj().T @ u, np.eye(4))
    rotated = SpinorOperator.constant_matrix(u.conj().T) @ r.h @ SpinorOperator.constant_matrix(u)
    diagonal = matrix_operator({(i, i): r.decoupled_sector(i) for i in range(1, 5)}, 4, r.domain)
    assert identity_residual(rotated, diagonal, standard_test_family(4, r.domain), "rotated.H").passed


def test_unit_coupling_decouples_into_the_diagonal_sectors():
    coupled = realize_1d((1.0, 1), 0.6, 0.0, 0.8)
    diagonal = realize_1d((1.0, 1), 0.0, 0.0, 1.0)
    tests = standard_test_family(1, "half_line")
    for i in range(1, 5):
        assert identity_residual(coupled.decoupled_sector(i), diagonal.sector(i), tests).passed


@pytest.mark.parametrize("w,domain", [((1.0, 1), "half_line"), ((1.0, -1), "full_line")])
def test_intertwining_relations(w, domain):
    r = realize_1d(w, 0.0, 0.0, 1.0, domain=domain)
    assert all(report.passed for report in r.intertwining())


def test_wrong_fermionic_seed_is_rejected():
    x = SpinorOperator.position()
    zero = SpinorOperator.zero()
    a4 = (zero, zero, x, SpinorOperator.momentum())
    d4 = (zero, zero, zero, x)
    with pytest.raises(ConstraintViolation) as info:
        build_ad_table(a4, d4)
    assert info.value.condition == 3
    assert info.value.residual > 1e-10


def test_zero_seeds_give_zero_hamiltonian():
    zero = SpinorOperator.zero()
    table = build_ad_table((zero,) * 4, (zero,) * 4)
    assert general_hamiltonian(table).is_zero()


def test_non_anticommuting_generators_break_hamiltonian_forms():
    table = realize_1d((1.0, 1)).table
    c = build_generators("dirac_c40")
    assert not general_hamiltonian(table, c).is_zero()
    skewed = c.replace(1, c[1] + c[2])
    with pytest.raises(FormMismatch) as info:
        general_hamiltonian(table, skewed)
    assert info.value.form == "ladder"
    assert info.value.residual > 1e-3


def test_zero_superpotential():
    with pytest.raises(ZeroSuperpotential):
        realize_1d((0.0, 1))


def test_gauge_parsing():
    assert parse_gauge("zero") == ("zero", 0)
    assert parse_gauge("uniform_B(1)") == ("uniform_B", 1)
    with pytest.raises(UnsupportedGauge):
        parse_gauge("coulomb")


def test_uniform_field_strength():
    r = realize_3d(1.0, 2, gauge="uniform_B(1)")
    fs = r.field_strength
    assert fs[0, 1] == 1
    assert fs[1, 0] == -1
    assert fs[0, 2] == 0 and fs[1, 2] == 0


@pytest.mark.slow
@pytest.mark.parametrize("gauge", ["zero", "uniform_B(1)"])
def test_three_dimensional_realization(gauge):
    r = realize_3d(1.0, 2, gauge=gauge)
    assert r.constraint_residual() == 0.0
    points = sample_points(25)
    report = r.verify_ss4(points=points)
    assert report.passed
    assert report.max_residual < 1e-9
    assert r.hamiltonian_consistency(points=points).passed


@pytest.mark.slow
def test_three_dimensional_superpotential_is_radial():
    r = realize_3d(2.0, 1)
    x, y, z = sp.symbols("x y z", real=True)
    assert sp.simplify(r.w - 2 * sp.sqrt(x**2 + y**2 + z**2)) == 0
