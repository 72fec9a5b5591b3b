from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from falsetate_fe.errors import (DivisionByIndeterminate, InconsistentSpecialData,
                                 MissingCoefficient, SchemaViolation, UnsupportedPrime)
from falsetate_fe.euler import (FormData, companion, euler_factor, euler_ratio_product,
                                is_squarefree, module_frobenius_charpoly, prime_factors,
                                twisted_frobenius_data)
from falsetate_fe.group import decomposition_data
from falsetate_fe.padic import CycElem, PadicScalar
from falsetate_fe.reps import ArtinRep, RepLabel, contragredient, enumerate_irreps

F11 = FormData("11a", 2, 11, {2: -2, 3: -1, 7: -2, 13: 4, 11: 1}, {11: 1}, p=5)


def test_prime_helpers():
    assert prime_factors(84) == [2, 3, 7]
    assert prime_factors(1) == []
    assert is_squarefree(14) and not is_squarefree(12)


def test_form_validation():
    with pytest.raises(SchemaViolation):
        FormData("x", 3, 11)
    with pytest.raises(SchemaViolation):
        FormData("x", 2, 12)
    with pytest.raises(SchemaViolation):
        FormData("x", 2, 11, {4: 1})
    with pytest.raises(SchemaViolation):
        FormData("x", 2, 11, {}, {7: 1})
    with pytest.raises(SchemaViolation):
        FormData("x", 2, 11, {}, {11: 2})
    with pytest.raises(SchemaViolation):
        FormData("x", 2, 15, {}, {}, p=5)
    with pytest.raises(InconsistentSpecialData):
        FormData("x", 2, 11, {11: -1}, {11: 1})
    with pytest.raises(InconsistentSpecialData):
        FormData("x", 4, 11, {11: 1})


def test_delta_derived_from_coefficient():
    f = FormData("x", 4, 7, {7: -7})
    assert f.delta(7) == -1
    assert f.is_special(7) and not f.is_special(2)
    with pytest.raises(MissingCoefficient):
        f.a(3)
    with pytest.raises(MissingCoefficient):
        FormData("y", 2, 11).delta(11)


def test_twisted_data_weight_two():
    s, t = twisted_frobenius_data(F11, 2)
    assert s == -2 and t == 2


def test_twisted_data_weight_four():
    f = FormData("w4", 4, 1, {7: 13}, p=5)
    s, t = twisted_frobenius_data(f, 7)
    assert s == Fraction(13, 7) and t == 7
    s, t = twisted_frobenius_data(f, 7, convention="paper-text")
    assert s == Fraction(13, 49) and t == Fraction(1, 7)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 4, 6, 8]), st.sampled_from([2, 3, 7, 11]),
       st.integers(-1000, 1000))
def test_discriminant_square_class(k, q, a):
    p = 5
    f = FormData("h", k, 1, {q: a}, p=p)
    s, t = twisted_frobenius_data(f, q)
    # s^2 - 4t = (a^2 - 4 q^(k-1)) / q^(k-2), and q^(k-2) is a square unit
    lhs = (s * s - 4 * t) * PadicScalar.from_rational(q ** (k - 2), p)
    assert lhs == a * a - 4 * q ** (k - 1)


def test_twisted_data_errors():
    with pytest.raises(MissingCoefficient):
        twisted_frobenius_data(F11, 17)
    with pytest.raises(UnsupportedPrime):
        twisted_frobenius_data(F11, 5)
    with pytest.raises(ValueError):
        twisted_frobenius_data(F11, 2, convention="other")
    with pytest.raises(ValueError):
        twisted_frobenius_data(FormData("x", 2, 11, {2: 1}), 2)


def test_module_charpoly_and_companion():
    tr, dt = module_frobenius_charpoly(F11, 2)
    assert tr == -1 and dt == Fraction(1, 2)
    X = companion(tr, dt)
    assert X[0][1] == Fraction(-1, 2) and X[1][0] == 1 and X[1][1] == -1


def test_theta_factors_are_one():
    for n in (1, 2):
        for eta in enumerate_irreps(5, n):
            if eta.theta:
                for q in (2, 11):
                    v = euler_factor(F11, eta, q)
                    assert v.degree == 0 and v.value == 1
                assert euler_ratio_product(F11, eta, [2, 11]) == 1


def test_special_trivial_factor():
    triv = ArtinRep(5, 1, RepLabel(0, 0, 0))
    v = euler_factor(F11, triv, 11)
    assert v.degree == 1
    assert v.value == 1 - Fraction(1, 11)
    assert v.value.valuation() == 1


def test_good_trivial_factor():
    triv = ArtinRep(5, 1, RepLabel(0, 0, 0))
    v = euler_factor(F11, triv, 2)
    assert v.degree == 2
    assert v.value == 1 - Fraction(-2, 2) + Fraction(2, 4)
    assert euler_ratio_product(F11, triv, [2, 3, 7, 11]) == 1


def test_omega_ratio_at_eleven():
    omega = ArtinRep(5, 1, RepLabel(1, 0, 0))
    assert euler_ratio_product(F11, omega, [11]) == 1


@pytest.mark.parametrize("n", [1, 2])
def test_ratio_antisymmetry(n):
    for eta in enumerate_irreps(5, n):
        r = euler_ratio_product(F11, eta, [2, 3, 7, 11])
        r_dual = euler_ratio_product(F11, contragredient(eta), [2, 3, 7, 11])
        assert r * r_dual == 1


def test_symmetric_functions_match_explicit_roots():
    # a = 8, q = 7: roots of T^2 - 8T + 7 are 1 and 7
    f = FormData("split", 2, 1, {7: 8}, p=5)
    q = 7
    dd = decomposition_data(q, 5, 2)
    for eta in enumerate_irreps(5, 2):
        if eta.dimension != 1:
            continue
        u = contragredient(eta).value(dd.frob) * CycElem.from_rational(Fraction(1, q), 5)
        explicit = (1 - u) * (1 - 7 * u)
        assert euler_factor(f, eta, q).value == explicit


def test_factor_valuations_nonnegative():
    for eta in enumerate_irreps(5, 2):
        for q in (2, 3, 7, 11):
            assert euler_factor(F11, eta, q).value.valuation() >= 0


def test_euler_errors():
    triv = ArtinRep(5, 1, RepLabel(0, 0, 0))
    with pytest.raises(UnsupportedPrime):
        euler_factor(F11, triv, 5)
    with pytest.raises(MissingCoefficient):
        euler_factor(F11, triv, 17)
    with pytest.raises(ValueError):
        euler_factor(F11.with_prime(3), triv, 2)


def test_division_by_indeterminate():
    # a_q = q + 1 at weight 2 makes the trivial factor vanish: (1 - 1)(1 - 1/q) = 0
    f = FormData("deg", 2, 1, {7: 8}, p=5)
    triv = ArtinRep(5, 1, RepLabel(0, 0, 0))
    assert euler_factor(f, triv, 7).value.is_zero()
    with pytest.raises(DivisionByIndeterminate):
        euler_ratio_product(f, triv, [7])
