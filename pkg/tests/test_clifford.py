import numpy as np
import pytest

from aiida_susyqm.clifford import (
    GeneratorSet,
    build_generators,
    check_relations,
    check_xi_structure,
    derive_matrices,
    duality_residual,
    unit,
)


@pytest.mark.parametrize("family", ["dirac_c40", "xi_c03", "wp", "pauli_tau"])
def test_relations_are_exact(family):
    report = check_relations(build_generators(family))
    assert report.passed
    assert report.max_residual == 0.0


def test_xi_has_negative_metric():
    xi = build_generators("xi_c03")
    assert xi.metric == (-1, -1, -1)
    for g in xi.gens:
        assert np.array_equal(g.imag, np.zeros((4, 4)))
        assert np.array_equal(g.T, -g)


def test_corrupted_generator_fails():
    c = build_generators("dirac_c40")
    broken = c[1].copy()
    broken[0, 3] = -broken[0, 3]
    report = check_relations(c.replace(1, broken))
    assert not report.passed
    assert report.max_residual >= 2
    assert "anticommutators" in report.failures()


def test_xi_structure():
    report = check_xi_structure(build_generators("xi_c03"), build_generators("wp"))
    assert report.passed
    assert set(report.residuals) == {"orthogonality", "duality", "commutes_with_wp", "wp_antisymmetry"}


def test_wp_in_place_of_xi_breaks_duality():
    wp = build_generators("wp")
    report = check_xi_structure(wp, wp)
    assert "duality" in report.failures()
    assert duality_residual(wp) > 0


def test_identity_is_not_orthogonal_antisymmetric():
    eye = np.eye(4, dtype=complex)
    candidate = GeneratorSet("identity", (eye, eye, eye), (-1, -1, -1), "antisymmetric")
    report = check_xi_structure(candidate, build_generators("wp"))
    assert "orthogonality" in report.failures()


def test_derived_triples():
    derived = derive_matrices(build_generators("dirac_c40"))
    assert derived.report.passed
    assert np.array_equal(derived.x_triple[0], unit(1, 1) - unit(2, 2))
    assert np.array_equal(derived.y_triple[0], unit(3, 3) - unit(4, 4))


def test_ladder_generators():
    derived = derive_matrices(build_generators("dirac_c40"))
    for mu in (1, 2):
        plus, minus = derived.c_plus(mu), derived.c_minus(mu)
        assert np.array_equal(plus @ minus + minus @ plus, np.eye(4))
        assert np.array_equal(plus.conj().T, minus)
        assert not (plus @ plus).any()


def test_gamma_matrices():
    derived = derive_matrices(build_generators("dirac_c40"))
    for (j, k), g in derived.gamma.items():
        assert np.allclose(g, -derived.gamma_at(k, j), atol=0)
        assert np.allclose(g, g.conj().T, atol=0)
    assert np.array_equal(derived.chirality @ derived.chirality, np.eye(4))


def test_derived_needs_dirac_family():
    with pytest.raises(ValueError):
        derive_matrices(build_generators("pauli_tau"))


def test_unknown_family():
    with pytest.raises(ValueError, match="not supported"):
        build_generators("c(2,2)")
