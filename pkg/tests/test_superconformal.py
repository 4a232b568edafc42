from fractions import Fraction

import pytest

from aiida_susyqm.algebra import SC4_1, SC4_2, SO21, TLR
from aiida_susyqm.exceptions import BadSector, NonpositiveOmega
from aiida_susyqm.ring import QuasiPoly
from aiida_susyqm.spectral import eigen_residual
from aiida_susyqm.superconformal import (
    Y3_LABELS,
    build_system,
    closed_form_state,
    energy_map,
    expected_energies,
    formal_zero_modes,
    ladder_spectrum,
    lambda_index,
    t3_levels,
    verify_closure,
    zero_modes,
)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.7])
def test_inverse_square_system_closes(k):
    system = build_system("example1", k=k)
    assert verify_closure(SC4_1, system).passed
    assert verify_closure(SO21, system).passed
    assert verify_closure(system.so3_table(), system).passed


@pytest.mark.parametrize("omega", [1.0, 2.0])
def test_oscillator_system_closes(omega):
    system = build_system("example2", omega=omega)
    for table in (SC4_2, TLR, SO21, system.so3_table()):
        report = verify_closure(table, system)
        assert report.passed, (table.name, report.failures())


def test_tlr_needs_oscillator(inverse_system):
    with pytest.raises(ValueError):
        inverse_system.bindings("TLR")


def test_nonpositive_omega():
    with pytest.raises(NonpositiveOmega):
        build_system("example2", omega=0.0)


def test_unknown_system():
    with pytest.raises(ValueError, match="not supported"):
        build_system("example3")


@pytest.mark.parametrize("omega", [1.0, 2.5])
def test_hamiltonian_decomposition(omega):
    assert build_system("example2", omega=omega).decomposition_residual().passed


def test_oscillator_zero_modes(oscillator):
    report = zero_modes(oscillator)
    assert len(report) == 4
    assert report.normalizable == [4]
    assert report.verdict == "SUSY unbroken"
    modes = {m.sector: m for m in report.modes}
    assert modes[4].psi == QuasiPoly.monomial(1.0, s="1/2", b="1/2")
    assert modes[4].norm.value == pytest.approx(0.5, abs=1e-12)
    assert modes[1].norm.at == "at_zero"
    assert modes[2].norm.at == "at_infinity"
    assert modes[3].norm.at == "at_infinity"
    assert all(m.annihilation_residual < 1e-12 for m in report.modes)


def test_inverse_square_zero_modes_are_not_normalizable(inverse_system):
    report = zero_modes(inverse_system)
    assert len(report) == 4
    assert report.normalizable == []
    assert report.verdict == "SUSY broken"
    assert report.to_json()["verdict"] == "SUSY broken"
    locations = {m.sector: m.norm.at for m in report.modes}
    assert locations == {1: "at_zero", 2: "at_infinity", 3: "at_infinity", 4: "at_zero"}


@pytest.mark.parametrize("k", [1.0, 2.5])
def test_formal_zero_modes_bind_to_concrete_ones(k):
    report = zero_modes(build_system("example1", k=k))
    for formal, (sector, psi, _) in zip(formal_zero_modes(), report):
        assert formal.bind(k) == psi, sector


def test_ladder_spectrum(oscillator):
    table = ladder_spectrum(oscillator, n_max=10)
    assert len(table.states) == 44
    assert table.max_residual() < 1e-9
    for sector in (1, 2, 3, 4):
        assert table.energies(sector) == pytest.approx(expected_energies(10, 1.0, sector))
    for state in table.states:
        assert abs(state.constant) > 0
        assert state.y3 == Y3_LABELS[state.sector - 1]


def test_ladder_states_are_sector_eigenstates():
    system = build_system("example2", omega=2.0)
    table = ladder_spectrum(system, n_max=3)
    state = table.state(3, 1)
    assert state.energy == pytest.approx(16.0)
    assert state.e == 4
    assert eigen_residual(system.sector(1), state.psi, 16.0) < 1e-9


def test_ladder_rejects_inverse_square(inverse_system):
    with pytest.raises(ValueError):
        ladder_spectrum(inverse_system)


def test_ladder_depth_limit(oscillator):
    with pytest.raises(ValueError):
        ladder_spectrum(oscillator, n_max=13)


def test_spectrum_csv(oscillator):
    lines = ladder_spectrum(oscillator, n_max=1).to_csv().splitlines()
    assert lines[0] == "n,sector,E,e,Y3_label"
    assert lines[1] == "0,4,0.0,1/2,-1"
    assert len(lines) == 9


def test_closed_form_states():
    # sector 4, n = 2: x^{1/2} L^0_2(x^2) e^{-x^2/2} with L^0_2(u) = 1 - 2u + u^2/2
    expected = QuasiPoly.polynomial({"1/2": 1.0, "5/2": -2.0, "9/2": 0.5}, b="1/2")
    assert closed_form_state(2, 4) == expected
    assert closed_form_state(0, 1) == QuasiPoly.monomial(1.0, s="3/2", b="1/2")


@pytest.mark.parametrize(
    "n,i,omega,expected",
    [
        (0, 4, 1.0, (0.0, Fraction(1, 2), Fraction(-1, 2))),
        (0, 1, 1.0, (2.0, Fraction(1), Fraction(0))),
        (2, 3, 1.0, (6.0, Fraction(5, 2), Fraction(1, 2))),
        (3, 1, 2.0, (16.0, Fraction(4), Fraction(0))),
    ],
)
def test_energy_map(n, i, omega, expected):
    assert energy_map(n, i, omega) == expected


def test_sector_shifts():
    assert [energy_map(0, i)[2] for i in (1, 2, 3, 4)] == [0, 0, Fraction(1, 2), Fraction(-1, 2)]


def test_energy_map_rejects_bad_sector():
    with pytest.raises(BadSector):
        energy_map(0, 5)
    with pytest.raises(BadSector):
        energy_map(-1, 1)


def test_lambda_index():
    assert [lambda_index(i, 1) for i in (1, 2, 3, 4)] == [1, 1, 0, 2]
    assert lambda_index(3, Fraction(1, 2)) == Fraction(-1, 2)
    with pytest.raises(BadSector):
        lambda_index(0, 1)


def test_t3_levels():
    assert t3_levels(1) == [1.0, 1.0, 0.5, 0.5, 2.0, 2.0, 1.5, 1.5]
