import random

import pytest

from falsetate_fe import linalg
from falsetate_fe.errors import LevelMismatch
from falsetate_fe.group import GroupAlgElem, GroupElem, decomposition_data, elements, group_order
from falsetate_fe.padic import CycElem
from falsetate_fe.reps import (ArtinRep, RepLabel, apply_to_algebra_elem,
                               character_inner_product, class_representatives,
                               complex_conjugation_signs, contragredient, enumerate_irreps,
                               inertia_invariants_dim)

GRID = [(3, 1), (3, 2), (5, 1), (5, 2)]


def _same(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


@pytest.mark.parametrize("p,n", GRID)
def test_completeness(p, n):
    reps = enumerate_irreps(p, n)
    assert sum(r.dimension ** 2 for r in reps) == group_order(p, n)
    assert len(reps) == len(class_representatives(p, n))
    ones = [r for r in reps if r.dimension == 1]
    assert len(ones) == (p - 1) * p ** (n - 1)
    for m in range(1, n + 1):
        assert sum(1 for r in reps if r.theta == m) == p ** (n - m)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1)])
def test_character_orthogonality(p, n):
    reps = enumerate_irreps(p, n)
    order = group_order(p, n)
    for a in reps:
        for b in reps:
            ip = character_inner_product(a, b)
            assert ip == (order if a is b else 0)


def test_character_orthogonality_sampled_p5_n2():
    reps = enumerate_irreps(5, 2)
    order = group_order(5, 2)
    rng = random.Random(0)
    for a in reps[-6:]:
        assert character_inner_product(a, a) == order
        for b in rng.sample(reps, 5):
            if b is not a:
                assert character_inner_product(a, b).is_zero()


@pytest.mark.parametrize("p,n", [(3, 2), (5, 1)])
def test_homomorphism(p, n):
    G = list(elements(p, n))
    rng = random.Random(p * n)
    for eta in enumerate_irreps(p, n):
        for _ in range(10):
            g, h = rng.choice(G), rng.choice(G)
            assert _same(linalg.mat_mul(eta.matrix_of(g), eta.matrix_of(h)), eta.matrix_of(g * h))


def test_theta_matrix_example():
    # theta_1 at p = 3: (v, c) e_w = zeta^((vw)^-1 c) e_{vw}
    eta = ArtinRep(3, 1, RepLabel(0, 0, 1))
    M = eta.matrix_of(GroupElem(1, 1, 3, 1))
    z = CycElem.zeta(3, 1)
    assert M[0][0] == z and M[1][1] == z**2 and M[0][1].is_zero()
    P = eta.matrix_of(GroupElem(2, 0, 3, 1))
    assert P[1][0] == 1 and P[0][1] == 1 and P[0][0].is_zero()


def test_character_values_of_psi():
    eta = ArtinRep(5, 2, RepLabel(1, 0, 0))
    # psi_{1,0} = Teichmuller character
    assert eta.value(GroupElem(2, 3, 5, 2)).numerator[0] % 25 == 7
    eta = ArtinRep(5, 2, RepLabel(0, 1, 0))
    # psi_{0,1}(1 + p) = zeta_5
    assert eta.value(GroupElem(6, 0, 5, 2)) == CycElem.zeta(5, 2, 5)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 1), (5, 2)])
def test_contragredient_is_transpose_inverse(p, n):
    G = list(elements(p, n))
    rng = random.Random(1)
    for eta in enumerate_irreps(p, n)[-3:] + enumerate_irreps(p, n)[1:3]:
        dual = contragredient(eta)
        assert contragredient(dual) is eta
        for g in rng.sample(G, 4):
            assert _same(dual.matrix_of(g), linalg.transpose(eta.matrix_of(g.inverse())))


def test_contragredient_labels():
    p, n = 5, 2
    reps = {str(r.label): r for r in enumerate_irreps(p, n)}
    classes = [g for g, _ in class_representatives(p, n)]
    for eta in reps.values():
        dual = contragredient(eta)
        twin = reps[str(dual.label)]
        assert all(dual.character(g) == twin.character(g) for g in classes)


@pytest.mark.parametrize("p,n", GRID)
def test_conjugation_signs(p, n):
    for eta in enumerate_irreps(p, n):
        dp, dm = complex_conjugation_signs(eta)
        assert dp + dm == eta.dimension
        if eta.theta:
            half = (p - 1) * p ** (eta.theta - 1) // 2
            assert (dp, dm) == (half, half)
        else:
            # psi(-1) = omega(-1)^i
            sign = (-1) ** eta.label.tame
            assert (dp, dm) == ((1, 0) if sign == 1 else (0, 1))


@pytest.mark.parametrize("p,n", GRID)
def test_inertia_invariants(p, n):
    for q in (2, 7, 11):
        if q == p:
            continue
        dd = decomposition_data(q, p, n)
        for eta in enumerate_irreps(p, n):
            assert inertia_invariants_dim(eta, dd) == (0 if eta.theta else 1)


def test_apply_to_algebra_elem():
    eta = ArtinRep(3, 1, RepLabel(0, 0, 1))
    dd = decomposition_data(2, 3, 1)
    from falsetate_fe.group import geometric_sum
    S = apply_to_algebra_elem(eta, geometric_sum(dd))
    z = CycElem.zeta(3, 1)
    assert S[0][0] == 1 + z and S[1][1] == 1 + z * z
    with pytest.raises(LevelMismatch):
        apply_to_algebra_elem(eta, GroupAlgElem.of(GroupElem(1, 0, 3, 2)))


def test_label_parse_and_canonical():
    assert RepLabel.parse("theta_2*psi(0,3)") == RepLabel(0, 3, 2)
    assert RepLabel.parse("psi(1,2)") == RepLabel(1, 2, 0)
    assert RepLabel.parse("trivial") == RepLabel(0, 0, 0)
    assert RepLabel.parse(str(RepLabel(3, 4, 1))) == RepLabel(3, 4, 1)
    for bad in ["", "foo", "*", "theta_*"]:
        with pytest.raises(ValueError):
            RepLabel.parse(bad)
    assert RepLabel(3, 7, 1).canonical(5, 2) == RepLabel(0, 2, 1)
    assert RepLabel(-1, -1, 0).canonical(5, 2) == RepLabel(3, 4, 0)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_inflation_matches_characters(p, n):
    """eta on G_n and its inflation to G_{n+1} agree on every element."""
    for eta in enumerate_irreps(p, n):
        big = ArtinRep(p, n + 1, eta.label.inflate(p).canonical(p, n + 1))
        assert big.dimension == eta.dimension
        for g, _ in class_representatives(p, n + 1):
            assert big.character(g) == eta.character(g.reduce(n)).embed(n + 1)


def test_bad_level():
    with pytest.raises(ValueError):
        ArtinRep(5, 1, RepLabel(0, 0, 2))
    with pytest.raises(LevelMismatch):
        ArtinRep(5, 1, RepLabel(0, 0, 1)).matrix_of(GroupElem(1, 0, 5, 2))
