import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from aiida_susyqm.exceptions import MixedSigns, PoleAtZero, UnboundParameter
from aiida_susyqm.ring import Exponent, QuasiPoly, derivative, norm_squared, ring_ops, x_power


def gauss(s, b="1/2", coeff=1.0):
    return QuasiPoly.monomial(coeff, s=s, b=b)


def random_element(rng):
    powers = rng.choice([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)], size=2)
    rates = rng.choice([Fraction(1, 2), Fraction(1)], size=2)
    return sum(
        (QuasiPoly.monomial(float(rng.normal()), s=s, b=b) for s, b in zip(powers, rates)),
        QuasiPoly.zero(),
    )


def test_exponents_cancel():
    assert ring_ops(x_power(1), x_power(-1), "mul") == QuasiPoly.constant(1.0)


def test_gaussian_rates_add():
    assert ring_ops(gauss(0), gauss(0), "mul") == QuasiPoly.monomial(1.0, b=1)


def test_equal_keys_merge():
    f = gauss("1/2")
    total = ring_ops(f, f, "add")
    assert len(total) == 1
    assert total.coeff("1/2", 0, "1/2") == pytest.approx(2.0)


def test_cancellation_drops_terms():
    f = gauss("1/2")
    assert (f - f).is_zero()


def test_derivative_of_ground_state():
    expected = QuasiPoly.polynomial({"-1/2": 0.5, "3/2": -1.0}, b="1/2")
    assert derivative(gauss("1/2")) == expected


def test_derivative_of_constant():
    assert derivative(QuasiPoly.constant(1.0)).is_zero()


def test_product_rule_on_random_pairs():
    rng = np.random.default_rng(7)
    points = np.linspace(0.3, 3.0, 10)
    step = 1e-5
    for _ in range(50):
        f, g = random_element(rng), random_element(rng)
        product = f * g
        assert derivative(product) == derivative(f) * g + f * derivative(g)
        numeric = (product.eval(points + step) - product.eval(points - step)) / (2 * step)
        exact = derivative(product).eval(points)
        scale = np.maximum(np.abs(exact), 1.0)
        assert np.max(np.abs(numeric - exact) / scale) < 1e-6


def test_ring_axioms():
    rng = np.random.default_rng(3)
    f, g, h = (random_element(rng) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f + g == g + f


def test_derivative_commutes_with_scale():
    f = gauss("3/2") + gauss("1/2", b=1)
    assert derivative(f.scale(2.5)) == derivative(f).scale(2.5)


def test_ground_state_norm_against_quadrature():
    omega = 1.0
    f = gauss("1/2", coeff=math.sqrt(omega))
    result = norm_squared(f, "half_line")
    assert result.is_finite
    assert result.value == pytest.approx(0.5, abs=1e-12)
    reference, _ = quad(lambda x: omega * x * math.exp(-omega * x * x), 0, 50, epsabs=1e-13)
    assert abs(result.value - reference) < 1e-10


def test_norm_matches_quadrature_for_gaussian_family():
    rng = np.random.default_rng(11)
    for _ in range(5):
        f = random_element(rng)
        result = norm_squared(f)
        reference, _ = quad(lambda x: abs(f.eval(x)) ** 2, 0, 40, epsabs=1e-14, limit=200)
        assert result.value == pytest.approx(reference, rel=1e-9)


def test_pure_power_diverges_on_full_line():
    result = norm_squared(x_power("3/2"), "full_line")
    assert not result.is_finite
    assert result.at == "at_infinity"


def test_growing_gaussian_diverges_at_infinity():
    result = norm_squared(QuasiPoly.monomial(1.0, s="-1/2", b="-1/2"), "half_line")
    assert result.to_dict() == {"verdict": "divergent", "at": "at_infinity"}


def test_inverse_power_diverges_at_zero():
    assert norm_squared(gauss("-1/2")).at == "at_zero"


@pytest.mark.parametrize(
    "s,at", [("-3/2", "at_zero"), ("-1/2", "at_zero"), ("-1/4", "at_infinity"), ("1/2", "at_infinity")]
)
def test_bare_power_divergence_location(s, at):
    assert norm_squared(x_power(s), "half_line").at == at


def test_linear_exponent_is_rejected_by_norm():
    with pytest.raises(MixedSigns):
        norm_squared(QuasiPoly.monomial(1.0, s=1, a=1, b=1))


def test_evaluation():
    assert x_power(2).eval(3) == pytest.approx(9)
    assert QuasiPoly.monomial(1.0, b=1).eval(0) == pytest.approx(1)
    assert gauss("1/2").eval(2) == pytest.approx(math.sqrt(2) * math.exp(-2))


def test_pole_at_origin():
    with pytest.raises(PoleAtZero):
        x_power(-1).eval(0)


def test_formal_exponent_binds_k():
    mode = QuasiPoly.monomial(1.0, s=Exponent(Fraction(1, 2), Fraction(1)))
    assert mode.is_formal
    with pytest.raises(UnboundParameter):
        mode.eval(1.0)
    assert mode.bind(2) == x_power("5/2")


def test_exponent_text_form():
    assert Exponent.parse("1/2+1*k") == Exponent(Fraction(1, 2), Fraction(1))
    assert str(Exponent(Fraction(-1, 2), Fraction(-1))) == "-1/2-1*k"


def test_json_records():
    f = gauss("1/2", coeff=2.0)
    (record,) = f.to_json()
    assert record == {"coeff_re": 2.0, "coeff_im": 0.0, "s": "1/2", "a": "0", "b": "1/2"}
    assert QuasiPoly.from_json(f.to_json()) == f
