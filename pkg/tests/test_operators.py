import math

import numpy as np
import pytest

from aiida_susyqm.clifford import build_generators
from aiida_susyqm.exceptions import DimensionMismatch, EmptyTestSet, OrderOverflow
from aiida_susyqm.operators import (
    SpinorField,
    SpinorOperator,
    identity_residual,
    matrix_operator,
    op_algebra,
    standard_test_family,
)
from aiida_susyqm.ring import QuasiPoly
from aiida_susyqm.superconformal import conformal, dilatation


def gaussian(s="0"):
    return QuasiPoly.monomial(1.0, s=s, b="1/2")


def test_canonical_heisenberg():
    x = SpinorOperator.position()
    p = SpinorOperator.momentum()
    assert x.commutator(p).equals(SpinorOperator.identity() * 1j)


def test_leibniz_canonical_form():
    x = SpinorOperator.position()
    d = SpinorOperator.d()
    assert (d @ x).equals(x @ d + SpinorOperator.identity())


def test_clifford_matrices_lift():
    c = build_generators("dirac_c40")
    p = SpinorOperator.momentum()
    a, b = p.lift(c[1]), p.lift(c[2])
    assert a.dim == 4
    assert a.anticommutator(b).is_zero()
    square = a.anticommutator(a)
    assert square.equals((p @ p).lift(np.eye(4)) * 2)


def test_dilatation_conformal_bracket():
    d, k = dilatation(), conformal()
    assert d.commutator(k).equals(k * 1j)


def test_momentum_on_gaussian():
    psi = SpinorField.scalar(gaussian(), domain="full_line")
    result = SpinorOperator.momentum().apply(psi)
    expected = QuasiPoly.monomial(1j, s=1, b="1/2")
    assert result[1] == expected


def test_adjoint_of_derivative():
    d = SpinorOperator.d()
    assert d.adjoint().equals(-d)
    p = SpinorOperator.momentum()
    assert p.adjoint().equals(p)
    assert (p @ p).adjoint().equals(p @ p)


def test_adjoint_of_product_reverses_order():
    x = SpinorOperator.position()
    d = SpinorOperator.d()
    assert (x @ d).adjoint().equals(d.adjoint() @ x.adjoint())


def test_adjoint_of_matrix_operator():
    c = build_generators("dirac_c40")
    op = SpinorOperator.momentum().lift(c[4]) + SpinorOperator.position().lift(1j * c[1] @ c[2])
    assert op.adjoint().equals(op)


def test_order_overflow():
    d2 = SpinorOperator.d(2)
    assert op_algebra(d2, SpinorOperator.d(), "compose").order == 3
    with pytest.raises(OrderOverflow):
        op_algebra(d2, d2, "compose")


def test_unknown_operation():
    with pytest.raises(ValueError, match="not supported"):
        op_algebra(SpinorOperator.d(), SpinorOperator.d(), "bracket")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SpinorOperator.identity(2) + SpinorOperator.identity(4)


def test_matrix_operator_entries():
    d = SpinorOperator.d()
    op = matrix_operator({(1, 2): d, (3, 3): SpinorOperator.position()})
    assert op.entry(1, 2).equals(d)
    assert op.entry(2, 1).is_zero()
    assert op.coefficient(0, 3, 3) == QuasiPoly.monomial(1.0, s=1)


def test_identity_residual_detects_difference():
    tests = standard_test_family(dim=1)
    x = SpinorOperator.position()
    good = identity_residual(x @ x, SpinorOperator.position(2), tests, "x*x")
    assert good.passed
    assert good.max_residual == 0.0
    bad = identity_residual(x, SpinorOperator.position(2), tests, "x vs x^2")
    assert not bad.passed
    assert bad.as_check()["name"] == "x vs x^2"


def test_empty_test_set():
    x = SpinorOperator.position()
    with pytest.raises(EmptyTestSet):
        identity_residual(x, x, [], "empty")


def test_standard_family_size():
    family = standard_test_family(dim=4)
    assert len(family) == 16
    assert all(f.dim == 4 for f in family)
    assert family[0][1].eval(1.0) == pytest.approx(math.exp(-0.5))
