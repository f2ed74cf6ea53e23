import pytest

from app.core.config import settings
from app.core.exceptions import EnumerationTooLargeError, InvalidCartanTypeError, OracleMismatchError
from app.lie import oracle
from app.lie.dynkin import build_finite
from app.lie.oracle import bruhat_leq, cross_check, enumerate_group
from app.lie.weyl import from_word, identity


@pytest.mark.parametrize("family,rank,order", [("A", 3, 24), ("B", 3, 48), ("C", 3, 48), ("D", 4, 192)])
def test_group_orders(family, rank, order):
    group = enumerate_group(build_finite(family, rank))
    assert group.order == order
    assert group.elements[0].is_identity()


def test_bfs_depth_is_length(a3):
    group = enumerate_group(a3)
    assert group.lengths == [w.length for w in group.elements]
    assert max(group.lengths) == 6


def test_enumeration_guard(a3, monkeypatch):
    monkeypatch.setattr(settings, "ORACLE_MAX_GROUP_ORDER", 10)
    with pytest.raises(EnumerationTooLargeError):
        enumerate_group(a3)


def test_affine_groups_are_not_enumerated(affine_a2):
    with pytest.raises(InvalidCartanTypeError):
        enumerate_group(affine_a2)


def test_derived_tables(a3):
    group = enumerate_group(a3)
    for k, w in enumerate(group.elements):
        assert group.elements[group.inverse(k)] == w.inverse()
        for label in a3.labels:
            assert group.elements[group.left_multiply(label, k)] == from_word(a3, (label,)) * w


def test_bruhat_order_small_cases(a2):
    group = enumerate_group(a2)
    s1s2, s2s1 = from_word(a2, (1, 2)), from_word(a2, (2, 1))
    for w in group.elements:
        assert bruhat_leq(identity(a2), w, group)
        assert bruhat_leq(w, w, group)
    assert not bruhat_leq(s1s2, s2s1, group)
    assert not bruhat_leq(s2s1, s1s2, group)
    assert bruhat_leq(s1s2, from_word(a2, (1, 2, 1)), group)


def test_bruhat_order_is_graded_by_length(a3):
    group = enumerate_group(a3)
    for w in group.elements:
        for u in group.elements:
            if bruhat_leq(u, w, group) and u != w:
                assert u.length < w.length
    assert len(group.lower_interval(group.order - 1)) == group.order


def test_coset_minima(a2):
    group = enumerate_group(a2)
    minima = group.coset_minima({2})
    assert len(set(minima)) == 3
    assert all(not group.elements[k].right_descents() & {2} for k in set(minima))


@pytest.mark.parametrize("name", ["A3", "B3", "C3"])
def test_cross_check_agrees(name):
    report = cross_check(build_finite(name[0], int(name[1:])))
    assert report.checks["lengths"] == report.group_order
    assert report.checks["longest"] == 1
    assert report.checks["min_coset_rep"] == report.group_order * 8


def test_cross_check_counts_for_a3(a3):
    report = cross_check(a3)
    assert report.diagram == "A3"
    assert report.group_order == 24
    assert report.longest_length == 6
    # sum of |W^I| over the subsets I of {1, 2, 3}
    assert report.checks["coset_descents"] == 75
    # each W^I counted once per K containing I
    assert report.checks["is_bp"] == 365


def test_cross_check_d4():
    report = cross_check(build_finite("D", 4))
    assert report.group_order == 192
    assert report.longest_length == 12
    assert report.checks["min_coset_rep"] == 192 * 16


def test_cross_check_only_on_configured_types():
    with pytest.raises(InvalidCartanTypeError):
        cross_check(build_finite("A", 4))


def test_cross_check_reports_a_mismatch(a3, monkeypatch):
    monkeypatch.setattr(oracle, "inversion_count", lambda w: w.length + 1)
    with pytest.raises(OracleMismatchError) as excinfo:
        cross_check(a3)
    assert excinfo.value.check == "lengths"
    assert "[]" in excinfo.value.witness
