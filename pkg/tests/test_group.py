import itertools

import pytest
from hypothesis import given, settings, strategies as st

from falsetate_fe.errors import LevelMismatch, QEqualsP
from falsetate_fe.group import (GroupAlgElem, GroupElem, compose, conjugacy_classes,
                                decomposition_data, elements, geometric_sum, group_order,
                                identity, multiplicative_order, units)
from falsetate_fe.padic import CycElem


def test_group_law():
    g = GroupElem(2, 1, 3, 2)
    h = GroupElem(4, 5, 3, 2)
    assert g * h == GroupElem(8, 1 + 2 * 5, 3, 2)
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()


def test_normalization_and_non_units():
    assert GroupElem(11, 30, 5, 1) == GroupElem(1, 0, 5, 1)
    with pytest.raises(ValueError):
        GroupElem(5, 0, 5, 1)


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        GroupElem(2, 0, 5, 1) * GroupElem(2, 0, 5, 2)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1)])
def test_associativity_exhaustive_sample(p, n):
    elems = list(elements(p, n))
    assert len(elems) == group_order(p, n)
    for g, h, k in itertools.islice(itertools.product(elems, repeat=3), 0, 20000, 7):
        assert (g * h) * k == g * (h * k)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 124), st.integers(0, 124), st.integers(-30, 30))
def test_powers(u, b, k):
    if u % 5 == 0:
        return
    g = GroupElem(u, b, 5, 3)
    assert g**k * g**(-k) == identity(5, 3)
    assert g ** (k + 1) == g**k * g


def test_frobenius_normalizes_inertia():
    for q, p, n in [(2, 3, 2), (11, 5, 2), (7, 5, 1)]:
        dd = decomposition_data(q, p, n)
        F, h = dd.frob, dd.inertia_gen
        assert F * h * F.inverse() == h**q


def test_conjugating_frobenius_changes_c():
    p, n, q = 5, 2, 11
    F = GroupElem(q, 0, p, n)
    for b in range(p**n):
        t = GroupElem(1, b, p, n)
        assert t * F * t.inverse() == GroupElem(q, (1 - q) * b, p, n)


def test_decomposition_data():
    dd = decomposition_data(2, 5, 2)
    assert dd.frob == GroupElem(2, 0, 5, 2)
    assert dd.inertia_gen == GroupElem(1, 1, 5, 2)
    assert dd.residue_order == 20
    assert decomposition_data(2, 5, 2, c=3).frob == GroupElem(2, 3, 5, 2)
    with pytest.raises(QEqualsP):
        decomposition_data(5, 5, 1)
    with pytest.raises(ValueError):
        decomposition_data(4, 5, 1)


def test_multiplicative_order():
    assert multiplicative_order(2, 5) == 4
    assert multiplicative_order(11, 5) == 1
    assert multiplicative_order(11, 25) == 5
    with pytest.raises(ValueError):
        multiplicative_order(5, 25)


def test_units():
    assert units(9) == [1, 2, 4, 5, 7, 8]


@pytest.mark.parametrize("p,n,expected", [(3, 1, 3), (5, 1, 5), (3, 2, 10), (5, 2, 26)])
def test_class_count_equals_irrep_count(p, n, expected):
    classes = conjugacy_classes(p, n)
    assert len(classes) == expected
    assert sum(len(c) for c in classes) == group_order(p, n)


def test_geometric_sum():
    dd = decomposition_data(2, 5, 1)
    S = geometric_sum(dd)
    assert S.support() == [GroupElem(1, 0, 5, 1), GroupElem(1, 1, 5, 1)]
    h = GroupAlgElem.of(dd.inertia_gen)
    one = GroupAlgElem.of(identity(5, 1))
    # (h - 1) S_q = h^q - 1
    lhs = (h - one) * S
    rhs = GroupAlgElem.of(dd.inertia_gen**2) - one
    assert lhs.support() == rhs.support()
    for g in lhs.support():
        assert lhs.coefficient(g) == rhs.coefficient(g)


def test_group_algebra_arithmetic():
    g = GroupElem(2, 1, 5, 1)
    x = GroupAlgElem.of(g, 2) + GroupAlgElem.of(identity(5, 1), 1)
    y = x * x
    assert y.coefficient(g * g) == 4
    assert y.coefficient(g) == 4
    assert y.coefficient(identity(5, 1)) == 1
    assert (x - x).terms == {}
    assert (x * CycElem.from_rational(3, 5)).coefficient(g) == 6
    with pytest.raises(LevelMismatch):
        x + GroupAlgElem.of(identity(5, 2))


def test_compose_and_reduce():
    g = GroupElem(2, 7, 5, 2)
    assert compose(g, g, g) == g**3
    assert g.reduce(1) == GroupElem(2, 2, 5, 1)
    assert g.cyclotomic_character() == 2
