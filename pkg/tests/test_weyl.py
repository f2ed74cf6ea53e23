from itertools import combinations

import pytest

from app.core.exceptions import InfiniteParabolicError, InvalidNodeError, NotMinimalCosetRepError
from app.lie.dynkin import build_finite
from app.lie.oracle import enumerate_group, inversion_count
from app.lie.roots import AffineRoot
from app.lie.weyl import (
    act_on_root,
    coset_descents,
    format_word,
    from_word,
    identity,
    inverse,
    is_bp,
    is_minimal,
    left_descents,
    length,
    longest_element,
    max_parabolic_quotient_rep,
    min_coset_rep,
    multiply,
    parabolic_decomposition,
    right_descents,
    simple_reflection,
    support,
)


def subsets(labels):
    labels = sorted(labels)
    return [set(c) for size in range(len(labels) + 1) for c in combinations(labels, size)]


def test_simple_reflection_is_an_involution(a3):
    s1 = simple_reflection(a3, 1)
    assert (s1 * s1).is_identity()


def test_braid_relation_in_a2(a2):
    s1s2 = simple_reflection(a2, 1) * simple_reflection(a2, 2)
    assert (s1s2 * s1s2 * s1s2).is_identity()
    assert not (s1s2 * s1s2).is_identity()


def test_s0_negates_alpha0(affine_a2):
    alpha0 = AffineRoot(affine_a2.labels, (1, 0, 0))
    assert act_on_root(simple_reflection(affine_a2, 0), alpha0).coeffs == (-1, 0, 0)


def test_reflection_acts_by_the_cartan_convention(a2):
    alpha2 = AffineRoot(a2.labels, (0, 1))
    assert act_on_root(simple_reflection(a2, 1), alpha2).coeffs == (1, 1)


def test_invalid_node_is_rejected(a2):
    with pytest.raises(InvalidNodeError):
        simple_reflection(a2, 3)


def test_elements_of_different_groups_do_not_multiply(a2, a3):
    with pytest.raises(InvalidNodeError):
        simple_reflection(a2, 1) * simple_reflection(a3, 1)


def test_elements_are_hashable_values(a3):
    w = from_word(a3, (1, 2, 1))
    same = from_word(a3, (2, 1, 2))
    assert w == same
    assert hash(w) == hash(same)
    assert len({w, same, identity(a3)}) == 2
    assert not w.matrix.flags.writeable


def test_lengths(a3, affine_a3):
    assert length(identity(a3)) == 0
    assert length(longest_element(a3, a3.labels)) == 6
    assert from_word(a3, (1, 2, 1, 2)).length == 2
    assert from_word(affine_a3, (0, 1, 2, 3, 0)).length == 5


def test_reduced_words_strip_the_smallest_descent(a2):
    w0 = longest_element(a2, a2.labels)
    assert w0.reduced_word == (1, 2, 1)
    assert format_word(w0) == "1 2 1"
    assert format_word(identity(a2)) == ""


def test_inverse(a3, affine_a3):
    for w in (from_word(a3, (1, 2, 3)), from_word(affine_a3, (0, 2, 1, 3))):
        assert multiply(w, inverse(w)).is_identity()
        assert length(inverse(w)) == length(w)


def test_descents(a2, a3):
    assert right_descents(identity(a2)) == set()
    assert left_descents(identity(a2)) == set()
    s1 = simple_reflection(a2, 1)
    assert right_descents(s1) == left_descents(s1) == {1}
    assert right_descents(longest_element(a2, a2.labels)) == {1, 2}
    w = from_word(a3, (1, 2))
    assert right_descents(w) == {2}
    assert left_descents(w) == {1}


def test_length_changes_by_one_and_matches_inversions(a3):
    group = enumerate_group(a3)
    for w in group.elements:
        assert w.length == inversion_count(w)
        for label in a3.labels:
            assert abs((w * simple_reflection(a3, label)).length - w.length) == 1


def test_min_coset_rep(a2):
    s1s2 = from_word(a2, (1, 2))
    assert min_coset_rep(s1s2, {2}) == simple_reflection(a2, 1)
    s2s1 = from_word(a2, (2, 1))
    assert min_coset_rep(s2s1, {2}) == s2s1
    rep = min_coset_rep(longest_element(a2, a2.labels), {2})
    assert rep.length == 2
    assert rep.reduced_word == (2, 1)
    assert not right_descents(rep) & {2}


def test_min_coset_rep_is_idempotent(a3):
    for w in enumerate_group(a3).elements:
        for subset in subsets(a3.labels):
            rep = min_coset_rep(w, subset)
            assert is_minimal(rep, subset)
            assert min_coset_rep(rep, subset) == rep


def test_longest_element_of_affine_needs_a_proper_subset(affine_a2):
    with pytest.raises(InfiniteParabolicError):
        longest_element(affine_a2, affine_a2.labels)
    assert longest_element(affine_a2, {0, 1}).length == 3


def test_max_parabolic_quotient_rep(a2, a3, affine_a3):
    assert max_parabolic_quotient_rep(a2, {1}, set()) == simple_reflection(a2, 1)
    assert max_parabolic_quotient_rep(a3, {1, 2, 3}, {1, 3}).length == 4
    assert max_parabolic_quotient_rep(affine_a3, {0, 1, 3}, {1, 3}).length == 4
    with pytest.raises(InvalidNodeError):
        max_parabolic_quotient_rep(a3, {1}, {2})


def test_coset_descents_of_identity(a3):
    for subset in subsets(a3.labels):
        assert coset_descents(identity(a3), subset) == subset


def test_coset_descents_reject_non_minimal(a2):
    with pytest.raises(NotMinimalCosetRepError):
        coset_descents(from_word(a2, (1, 2)), {2})


def test_coset_descent_trichotomy(a3):
    for subset in subsets(a3.labels):
        for u in enumerate_group(a3).elements:
            if not is_minimal(u, subset):
                continue
            descents = coset_descents(u, subset)
            for label in a3.labels:
                su = simple_reflection(a3, label) * u
                lower = su.length < u.length
                higher_minimal = su.length > u.length and is_minimal(su, subset)
                same_coset = min_coset_rep(su, subset) == u
                assert [lower, higher_minimal, same_coset].count(True) == 1
                assert (label in descents) == (lower or same_coset)


def test_affine_a3_node_2(affine_a3):
    s0, s2 = {1, 2, 3}, {0, 1, 3}
    j = {1, 3}
    w0 = max_parabolic_quotient_rep(affine_a3, s0, j)
    wm = max_parabolic_quotient_rep(affine_a3, s2, j)
    y = w0 * wm
    assert coset_descents(w0, j) == s0
    assert coset_descents(y, j) == s0
    assert support(w0) == s0
    assert y.length == 8
    decomposition = parabolic_decomposition(y, s2, j)
    assert decomposition.v == w0
    assert decomposition.u == wm
    assert decomposition.product == y
    assert is_bp(y, s2, j)


def test_support(a2):
    assert support(identity(a2)) == set()
    assert support(from_word(a2, (1, 2, 1))) == {1, 2}


def test_identity_decomposes_trivially(a3):
    e = identity(a3)
    decomposition = parabolic_decomposition(e, {1, 2})
    assert decomposition.v == decomposition.u == e
    assert is_bp(e, {1, 2})


def test_parabolic_decomposition_is_length_additive(a3):
    for w in enumerate_group(a3).elements:
        for subset in subsets(a3.labels):
            decomposition = parabolic_decomposition(w, subset)
            assert decomposition.v.length + decomposition.u.length == w.length
            assert decomposition.product == w


def test_decomposition_requires_minimal_element(a2):
    with pytest.raises(NotMinimalCosetRepError):
        parabolic_decomposition(from_word(a2, (1, 2)), {1}, {2})


def test_a3_has_non_bp_elements(a3):
    assert not is_bp(from_word(a3, (1, 2)), {1})
    verdicts = {is_bp(w, subset) for w in enumerate_group(a3).elements for subset in subsets(a3.labels)}
    assert verdicts == {True, False}


def test_matrix_representation_is_faithful():
    for family, rank, order in [("A", 3, 24), ("B", 3, 48), ("C", 3, 48), ("D", 4, 192)]:
        group = enumerate_group(build_finite(family, rank))
        assert len(set(group.elements)) == order
        assert len({w.reduced_word for w in group.elements}) == order
