import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from falsetate_fe.errors import NotInvertible, PrecisionExhausted
from falsetate_fe.padic import (CycElem, PadicScalar, check_prime, cyclotomic_polynomial,
                                is_prime, teichmuller, vp)


def test_is_prime_and_check_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert check_prime(5) == 5
    with pytest.raises(ValueError):
        check_prime(2)
    with pytest.raises(ValueError):
        check_prime(9)


def test_vp():
    assert vp(250, 5) == 3
    assert vp(7, 5) == 0
    assert vp(-25, 5) == 2


# scalars

def test_scalar_from_rational_roundtrip():
    for x in [Fraction(1, 11), Fraction(-3, 7), Fraction(25, 2), Fraction(2, 125), 0, 1]:
        s = PadicScalar.from_rational(x, 5)
        assert s == x
        if x:
            assert s.valuation() == vp(Fraction(x).numerator, 5) - vp(Fraction(x).denominator, 5)


def test_scalar_lift_recovers_small_rationals():
    assert PadicScalar.from_rational(Fraction(-3, 7), 5).lift() == Fraction(-3, 7)
    assert PadicScalar.from_rational(Fraction(2, 25), 5).lift() == Fraction(2, 25)


def test_scalar_inverse_of_one_minus_p():
    s = PadicScalar.from_rational(1 - 5, 5)
    assert (s.inverse() * s - 1).is_zero()
    assert s.inverse() == Fraction(1, -4)


def test_scalar_division_by_zero():
    with pytest.raises(NotInvertible):
        PadicScalar.from_rational(0, 3).inverse()


def test_scalar_precision_is_tracked():
    s = PadicScalar.from_rational(Fraction(1, 5), 5, 10)
    assert s.abs_precision == 10
    assert s.valuation() == -1
    assert (s * 5).abs_precision == 11


def test_teichmuller():
    w = teichmuller(2, 5)
    assert w.residue % 25 == 7
    assert (w**4 - 1).is_zero()
    assert w.residue % 5 == 2
    for u in range(1, 7):
        t = teichmuller(u, 7)
        assert (t**6 - 1).is_zero() and t.residue % 7 == u


# cyclotomic elements

def test_zeta_relations_level_one():
    z = CycElem.zeta(3, 1)
    assert z * z == -1 - z
    assert (1 + z) * (1 + z * z) == 1
    assert z.inverse() == z * z
    assert (z - 1).inverse().valuation() == Fraction(-1, 2)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_valuation_of_zeta_minus_one(p, m):
    phi = (p - 1) * p ** (m - 1)
    z = CycElem.zeta(p, m)
    assert (z - 1).valuation() == Fraction(1, phi)
    assert (z - 1).pi_adic_valuation() == Fraction(1, phi)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_cyclotomic_polynomial_matches_sympy(p, m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(p**m, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(p, m) == [int(c) for c in expected]


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_valuation_matches_resultant_oracle(p, m):
    """v(a) = v_p(Res(a(x), Phi(x))) / phi for integral a."""
    rng = random.Random(100 * p + m)
    x = sympy.Symbol("x")
    Phi = sympy.cyclotomic_poly(p**m, x)
    phi = (p - 1) * p ** (m - 1)
    for _ in range(15):
        coeffs = [rng.randrange(-30, 30) * p ** rng.randrange(2) for _ in range(phi)]
        if not any(coeffs):
            continue
        a = CycElem(p, m, coeffs)
        res = int(sympy.resultant(sum(c * x**i for i, c in enumerate(coeffs)), Phi, x))
        assert a.valuation() == Fraction(vp(res, p), phi)
        assert a.pi_adic_valuation() == a.valuation()


def test_embed_and_mixed_levels():
    z9 = CycElem.zeta(3, 2)
    z3 = CycElem.zeta(3, 1)
    assert z9**3 == z3
    assert (z9**3 - z3.embed(2)).is_zero()
    assert (z9 * z3) == CycElem.zeta(3, 2, 4)


def test_inverse_of_non_units_keeps_precision():
    a = CycElem.zeta(5, 2) - 1
    b = a.inverse()
    assert b.valuation() == Fraction(-1, 20)
    assert (a * b - 1).is_zero()
    assert a.abs_precision - b.abs_precision <= 2


def test_zero_has_no_inverse_and_infinite_valuation():
    zero = CycElem.zero(5, 1)
    assert zero.valuation() == float("inf")
    with pytest.raises(NotInvertible):
        zero.inverse()


def test_reduce_to_and_key():
    a = CycElem.from_rational(Fraction(1, 3), 5, 1)
    assert a.key(10) == (a + 5**12).key(10)
    assert a.key(10) != (a + 5**3).key(10)
    with pytest.raises(PrecisionExhausted):
        a.reduce_to(a.abs_precision + 1)


def test_level_zero_is_qp():
    a = CycElem.from_rational(Fraction(2, 3), 7)
    assert a.degree == 1
    assert a * 3 == 2


# ring laws

def _elem(p, m, draw_coeffs):
    return CycElem(p, m, draw_coeffs)


@st.composite
def cyc_triples(draw):
    p, m = draw(st.sampled_from([(3, 1), (3, 2), (5, 1), (5, 2)]))
    phi = (p - 1) * p ** (m - 1)
    coeff = st.integers(min_value=-10**6, max_value=10**6)
    elems = [CycElem(p, m, draw(st.lists(coeff, min_size=phi, max_size=phi))) for _ in range(3)]
    return elems


@settings(max_examples=1000, deadline=None)
@given(cyc_triples())
def test_ring_laws(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@settings(max_examples=150, deadline=None)
@given(cyc_triples())
def test_inverse_law(triple):
    a = triple[0]
    if a.is_zero():
        return
    assert a * a.inverse() == 1
    assert a.inverse().valuation() == -a.valuation()
