import pytest

from taquin.dcomplete import (check_axiom, check_d1, dcomplete_report, find_dk_intervals,
                              find_dk_minus_intervals, is_d3_complete, is_dcomplete,
                              is_nonoverlapping)
from taquin.families import all_rooted_trees, delta, rooted_tree, shape, shifted_shape
from taquin.poset import from_covers, has_unique_max, ideal_masks, restrict_mask

from conftest import W, X, Y, Z, connected_posets


def test_diamond_intervals(diamond):
    d3 = find_dk_intervals(diamond, 3)
    assert [(d.bottom, d.top) for d in d3] == [(W, Z)]
    m3 = find_dk_minus_intervals(diamond, 3)
    assert [(m.bottom, set(m.mids)) for m in m3] == [(W, {X, Y})]


def test_delta_intervals():
    assert [(d.bottom, d.top) for d in find_dk_intervals(delta(2, 2), 4)] == [(0, 5)]
    D = delta(2, 1)
    assert len(find_dk_minus_intervals(D, 4)) == 1
    assert find_dk_intervals(D, 4) == []


def test_k_must_be_at_least_three(diamond):
    with pytest.raises(ValueError):
        find_dk_intervals(diamond, 2)


def test_pendant_fails_d2(pendant):
    v = check_axiom(pendant, "D2")
    assert not v
    (d, c), = v.witnesses
    assert (d.bottom, d.top, c) == (W, Z, 5)
    assert check_axiom(pendant, "D1") and check_axiom(pendant, "D3")


def test_delta32_fails_d1_at_k5():
    v = check_d1(delta(3, 2))
    assert not v
    assert {iv.k for iv in v.witnesses} == {5}


def test_bowtie_fails_d3():
    # x, y both cover w and w'
    P = from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    v = check_axiom(P, "D3")
    assert not v
    assert not is_nonoverlapping(P)


def test_family_verdicts():
    assert is_dcomplete(shape((4, 2, 1)))
    for b in range(5):
        for n in range(5):
            assert is_dcomplete(delta(b, n)) == (b <= n)
    for size in range(1, 7):
        for parents in all_rooted_trees(size):
            assert is_dcomplete(rooted_tree(parents))


def test_d3_complete_vs_dcomplete():
    # Delta_{3,2}: fine at k = 3, fails above
    D = delta(3, 2)
    assert is_d3_complete(D) and not is_dcomplete(D)


def test_report_keys(diamond):
    rep = dcomplete_report(diamond)
    assert list(rep) == ["D1", "D2", "D3"]
    assert all(rep.values())


def test_shifted_staircase_dcomplete():
    assert is_dcomplete(shifted_shape((4, 3, 2, 1)))


def test_filters_of_dcomplete_are_dcomplete():
    for n in range(1, 8):
        for P in connected_posets(n):
            if not is_dcomplete(P):
                continue
            assert has_unique_max(P)
            for ideal in ideal_masks(P):
                F = P.full & ~ideal
                if F:
                    assert is_dcomplete(restrict_mask(P, F))


def test_unique_completion_in_d3_complete():
    for n in range(4, 8):
        for P in connected_posets(n):
            if not is_d3_complete(P):
                continue
            for iv in find_dk_minus_intervals(P, 3):
                x, y = iv.mids
                tops = [z for z in P.upper[x] if z in P.upper[y]]
                assert len(tops) == 1
