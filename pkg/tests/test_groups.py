"""Permutation groups, Sylow subgroups, p-complements, conjugation chains."""

import random

import pytest

from ramify.groups import (
    FiniteGroup,
    GroupError,
    alternating_group,
    compose,
    conjugation_nilpotent,
    cyclic_group,
    dihedral_group,
    has_normal_p_complement,
    identity_perm,
    inverse,
    parse_cycles,
    perm_order,
    quaternion_group,
    sylow_subgroup,
    symmetric_group,
)


# -------------------------------------------------------------- permutations


def test_compose_convention():
    # compose(a, b) applies a first, then b
    a = (1, 0, 2)
    b = (0, 2, 1)
    assert compose(a, b) == (2, 0, 1)
    assert compose(a, inverse(a)) == identity_perm(3)
    assert inverse((1, 2, 0)) == (2, 0, 1)


def test_perm_order():
    assert perm_order(identity_perm(4)) == 1
    assert perm_order((1, 0, 2, 3)) == 2
    assert perm_order((1, 2, 0, 4, 3)) == 6


def test_parse_cycles():
    (g,) = parse_cycles("(1,2,3)")
    assert g == (1, 2, 0)
    a, b = parse_cycles("(1,2);(1,2,3)")
    assert a == (1, 0, 2) and b == (1, 2, 0)
    (wide,) = parse_cycles("(1,2)", degree=4)
    assert wide == (1, 0, 2, 3)
    (two,) = parse_cycles("(1,2)(3,4)")
    assert two == (1, 0, 3, 2)
    (ident,) = parse_cycles("()", degree=3)
    assert ident == (0, 1, 2)


def test_parse_cycles_rejects_garbage():
    for bad in ["", "(1,2", "1,2)", "(1,x)", "(1,1)", "(0,1)", "[1,2]"]:
        with pytest.raises(GroupError):
            parse_cycles(bad)
    with pytest.raises(GroupError):
        parse_cycles("(1,5)", degree=3)


# -------------------------------------------------------------------- groups


def test_standard_orders():
    assert cyclic_group(6).order == 6
    assert dihedral_group(4).order == 8
    assert symmetric_group(4).order == 24
    assert alternating_group(4).order == 12
    assert alternating_group(5).order == 60
    assert quaternion_group().order == 8
    with pytest.raises(GroupError):
        alternating_group(6)  # order 360 exceeds the cap


def test_alternating_three_elements():
    A3 = alternating_group(3)
    assert set(A3.elements) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def test_group_membership_and_conjugation():
    G = symmetric_group(3)
    swap = (1, 0, 2)
    assert swap in G
    assert (1, 0) not in G
    g = (1, 2, 0)
    # conjugate of a transposition is a transposition
    assert perm_order(G.conjugate(g, swap)) == 2


def test_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup(3, [(0, 0, 1)])
    with pytest.raises(GroupError):
        FiniteGroup(3, [(0, 1)])
    with pytest.raises(GroupError):
        cyclic_group(0)
    with pytest.raises(GroupError):
        dihedral_group(2)
    with pytest.raises(GroupError):
        symmetric_group(6)  # order 720 > cap


def test_quaternion_has_unique_involution():
    Q = quaternion_group()
    invs = [g for g in Q.elements if perm_order(g) == 2]
    assert len(invs) == 1


# --------------------------------------------------------------------- Sylow


@pytest.mark.parametrize(
    "maker,p,expected",
    [
        (lambda: symmetric_group(3), 2, 2),
        (lambda: symmetric_group(3), 3, 3),
        (lambda: symmetric_group(4), 2, 8),
        (lambda: symmetric_group(4), 3, 3),
        (lambda: symmetric_group(5), 2, 8),
        (lambda: alternating_group(5), 2, 4),
        (lambda: alternating_group(5), 5, 5),
        (lambda: dihedral_group(6), 2, 4),
        (lambda: quaternion_group(), 2, 8),
    ],
)
def test_sylow_orders(maker, p, expected):
    G = maker()
    P = sylow_subgroup(G, p)
    assert P.order == expected
    for g in P.elements:
        assert g in G


def test_sylow_seed_independence():
    G = symmetric_group(4)
    for seed in range(4):
        assert sylow_subgroup(G, 2, seed=seed).order == 8


def test_sylow_rejects_composite():
    with pytest.raises(GroupError):
        sylow_subgroup(symmetric_group(3), 4)


# --------------------------------------------------------------- complements


def test_s3_has_a3_complement_at_two():
    rep = has_normal_p_complement(symmetric_group(3), 2)
    assert rep.exists
    assert rep.candidate_order == rep.expected_order == 3
    assert set(rep.subgroup.elements) == set(alternating_group(3).elements)
    assert "order 3" in str(rep)


def test_a4_has_no_complement_at_two():
    rep = has_normal_p_complement(alternating_group(4), 2)
    assert not rep.exists
    assert rep.expected_order == 3
    assert rep.candidate_order == 12  # the 3-cycles already generate A4
    assert "no normal p-complement" in str(rep)


def test_a4_splits_at_three():
    # the Klein four-group is a normal 3-complement
    rep = has_normal_p_complement(alternating_group(4), 3)
    assert rep.exists and rep.candidate_order == 4


def test_p_groups_have_trivial_complement():
    for G in (dihedral_group(4), quaternion_group(), cyclic_group(4), cyclic_group(8)):
        rep = has_normal_p_complement(G, 2)
        assert rep.exists and rep.candidate_order == 1
    rep = has_normal_p_complement(cyclic_group(9), 3)
    assert rep.exists and rep.candidate_order == 1


def test_s5_complement_candidate_is_a5():
    rep = has_normal_p_complement(symmetric_group(5), 2)
    assert not rep.exists
    assert rep.expected_order == 15
    assert rep.candidate_order == 60  # odd-order permutations generate A5


def test_cyclic_six_splits_at_both_primes():
    G = cyclic_group(6)
    at2 = has_normal_p_complement(G, 2)
    assert at2.exists and at2.candidate_order == 3
    at3 = has_normal_p_complement(G, 3)
    assert at3.exists and at3.candidate_order == 2


# --------------------------------------------------------------- conjugation


def test_s3_conjugation_chain_at_two():
    rep = conjugation_nilpotent(symmetric_group(3), 2)
    assert not rep.nilpotent
    assert rep.chain_dims == (6, 3, 2)
    assert rep.stable_dim == 2
    # the stable piece contains the differences of transpositions
    G = symmetric_group(3)
    swaps = [i for i, g in enumerate(G.elements) if perm_order(g) == 2]
    assert len(swaps) == 3
    from ramify.artin import in_row_space, rref

    red, piv = rref(list(rep.stable_basis), 2)
    for a, b in [(swaps[0], swaps[1]), (swaps[0], swaps[2])]:
        vec = [0] * 6
        vec[a] = vec[b] = 1
        assert in_row_space(vec, red, piv, 2)


@pytest.mark.parametrize(
    "maker",
    [
        lambda: dihedral_group(4),
        lambda: quaternion_group(),
        lambda: cyclic_group(4),
        lambda: cyclic_group(8),
    ],
)
def test_two_groups_are_conjugation_nilpotent(maker):
    rep = conjugation_nilpotent(maker(), 2)
    assert rep.nilpotent
    assert rep.chain_dims[-1] == 0
    assert rep.stable_dim == 0 and rep.stable_basis == ()


def test_c9_conjugation_nilpotent_at_three():
    rep = conjugation_nilpotent(cyclic_group(9), 3)
    assert rep.nilpotent
    # abelian: one step kills everything
    assert rep.chain_dims == (9, 0)


def test_a4_conjugation_not_nilpotent_at_three():
    rep = conjugation_nilpotent(alternating_group(4), 3)
    assert not rep.nilpotent
    assert rep.stable_dim >= 1


def test_s5_generator_path_matches_small_group_path():
    # order 120 takes the generator-only branch; the chain must still
    # behave like the full-group computation does on a small group
    rep = conjugation_nilpotent(symmetric_group(5), 2)
    assert not rep.nilpotent
    assert rep.chain_dims[0] == 120
    assert rep.stable_dim >= 2
    with pytest.raises(GroupError):
        conjugation_nilpotent(symmetric_group(3), 6)


def test_s3_splits_but_conjugation_is_not_nilpotent():
    # the two diagnostics measure different things: S3 at p = 2 has
    # the normal complement A3, yet conjugation on F_2[S3] stabilizes
    # at a nonzero submodule
    G = symmetric_group(3)
    assert has_normal_p_complement(G, 2).exists
    assert not conjugation_nilpotent(G, 2).nilpotent


def test_abelian_groups_are_conjugation_nilpotent_in_one_step():
    for G, p in [(cyclic_group(6), 2), (cyclic_group(6), 3)]:
        rep = conjugation_nilpotent(G, p)
        assert rep.nilpotent
        assert rep.chain_dims == (6, 0)
