import json
import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taquin.errors import CycleDetected, NotComparable, RedundantCover, SizeLimitExceeded
from taquin.families import delta, shape
from taquin.poset import (Poset, brute_force_canonical, canonical_form, canonical_poset, chain,
                          antichain, filters, from_covers, has_unique_max, ideal_masks, ideals,
                          interval, is_connected, is_filter, is_ideal, is_isomorphic,
                          linear_extensions, linear_extensions_count, order_dual, relabel, restrict)

from conftest import connected_posets
from strategies import poset_from_relation, posets


def test_diamond_construction(diamond):
    assert diamond.n == 4
    assert diamond.maximal_elements() == [3]
    assert diamond.leq(0, 3) and not diamond.comparable(1, 2)


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        from_covers(2, [(0, 1), (1, 0)])


def test_redundant_cover_strict_and_lenient():
    with pytest.raises(RedundantCover):
        from_covers(3, [(0, 1), (1, 2), (0, 2)])
    P = from_covers(3, [(0, 1), (1, 2), (0, 2)], strict=False)
    assert P.covers == ((0, 1), (1, 2))
    assert P.dropped == ((0, 2),)


def test_leq_is_closure_of_covers():
    P = delta(2, 2)
    for a in range(P.n):
        for b in range(P.n):
            # walk up cover edges
            reach, stack = {a}, [a]
            while stack:
                v = stack.pop()
                for w in P.upper[v]:
                    if w not in reach:
                        reach.add(w)
                        stack.append(w)
            assert P.leq(a, b) == (b in reach)


def test_connectivity_and_unique_max(diamond):
    assert is_connected(diamond) and has_unique_max(diamond)
    assert not is_connected(antichain(2))
    D = delta(3, 2)
    assert is_connected(D) and has_unique_max(D)
    assert D.maximal_elements() == [6]


def test_ideal_counts(diamond):
    assert len(list(filters(shape((3, 3))))) == 10
    assert len(list(ideals(chain(3)))) == 4
    found = set(ideals(diamond))
    assert found == {frozenset(), frozenset({0}), frozenset({0, 1}), frozenset({0, 2}),
                     frozenset({0, 1, 2}), frozenset({0, 1, 2, 3})}
    assert is_ideal(diamond, {0, 1}) and not is_ideal(diamond, {1})
    assert is_filter(diamond, {3, 2}) and not is_filter(diamond, {2})


def test_ideals_deterministic_order(diamond):
    assert list(ideals(diamond)) == list(ideals(diamond))
    sizes = [len(I) for I in ideals(diamond)]
    assert sizes == sorted(sizes)


def test_interval(diamond):
    assert interval(diamond, 0, 3) == frozenset(range(4))
    with pytest.raises(NotComparable):
        interval(diamond, 1, 2)


def test_restrict_lower_chain():
    D = delta(3, 3)
    assert restrict(D, [0, 1, 2]) == chain(3)


def test_dual_is_involution_on_census():
    for n in range(1, 7):
        for P in connected_posets(n):
            assert canonical_form(order_dual(order_dual(P))) == canonical_form(P)


def test_canonical_form_examples(diamond):
    flipped = relabel(diamond, [3, 2, 1, 0][::-1])
    other = relabel(diamond, [2, 0, 3, 1])
    assert canonical_form(diamond) == canonical_form(flipped) == canonical_form(other)
    assert canonical_form(diamond) != canonical_form(chain(4))
    assert len(canonical_form(diamond).digest) == 16


def test_three_element_classes_brute_force():
    # every labeled order relation on 3 elements, deduplicated by the n! oracle
    elems = range(3)
    pairs = [(a, b) for a in elems for b in elems if a != b]
    oracle, ours = set(), set()
    for choice in product((0, 1), repeat=len(pairs)):
        less = {p for p, c in zip(pairs, choice) if c}
        if any((b, a) in less for a, b in less):
            continue
        if any((a, c) not in less for a, b in less for b2, c in less if b == b2):
            continue
        down = [1 << e | sum(1 << a for a, b in less if b == e) for e in elems]
        P = Poset.from_down_masks(down)
        oracle.add(brute_force_canonical(P))
        ours.add(canonical_form(P))
    assert len(oracle) == 5
    assert len(ours) == 5


def test_canonical_agrees_with_brute_force_up_to_5():
    for n in range(1, 6):
        forms = [canonical_form(P) for P in connected_posets(n)]
        codes = [brute_force_canonical(P) for P in connected_posets(n)]
        assert len(set(forms)) == len(forms)
        assert len(set(codes)) == len(codes)


def test_canonical_size_limit():
    with pytest.raises(SizeLimitExceeded):
        canonical_form(chain(13))


def test_canonical_poset_is_isomorphic():
    P = delta(2, 3)
    C = canonical_poset(P)
    assert canonical_form(C).covers == C.covers
    assert is_isomorphic(P, C)


def test_random_relabelings_keep_canonical_form():
    rng = random.Random(20240601)
    for _ in range(1000):
        n = rng.randint(1, 8)
        less = {(i, j) for j in range(n) for i in range(j) if rng.random() < 0.35}
        P = poset_from_relation(n, less)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(relabel(P, perm)) == canonical_form(P)


@settings(max_examples=200, deadline=None)
@given(posets(max_n=8), st.randoms(use_true_random=False))
def test_canonical_form_is_class_function(P, rnd):
    perm = list(range(P.n))
    rnd.shuffle(perm)
    assert canonical_form(relabel(P, perm)) == canonical_form(P)


def _brute_extensions(P):
    return sum(1 for perm in permutations(range(P.n))
               if all(perm.index(lo) < perm.index(hi) for lo, hi in P.covers))


@settings(max_examples=150, deadline=None)
@given(posets(max_n=6))
def test_extension_count_matches_brute_force(P):
    assert linear_extensions_count(P) == _brute_extensions(P)
    seqs = list(linear_extensions(P))
    assert len(seqs) == len(set(seqs)) == linear_extensions_count(P)


def test_extension_counts_examples():
    assert linear_extensions_count(shape((3, 3))) == 5
    assert linear_extensions_count(chain(6)) == 1
    assert linear_extensions_count(antichain(5)) == 120


def test_extensions_lexicographic(diamond):
    assert list(linear_extensions(diamond)) == [(0, 1, 2, 3), (0, 2, 1, 3)]


def test_extensions_of_subset(diamond):
    assert list(linear_extensions(diamond, [1, 2, 3])) == [(1, 2, 3), (2, 1, 3)]
    assert linear_extensions_count(diamond, 0b1110) == 2


@settings(max_examples=150, deadline=None)
@given(posets(max_n=7))
def test_ideal_filter_duality(P):
    full = P.full
    ims = ideal_masks(P)
    dual_ims = set(ideal_masks(order_dual(P)))
    assert len(ims) == len(dual_ims)
    assert {full & ~m for m in ims} == dual_ims
    for m in ims:
        comp = [e for e in range(P.n) if not m >> e & 1]
        assert is_filter(P, comp)


def test_json_roundtrip(diamond, tmp_path):
    text = diamond.to_json()
    assert json.loads(text) == {"n": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]}
    assert Poset.from_dict(json.loads(text)) == diamond
