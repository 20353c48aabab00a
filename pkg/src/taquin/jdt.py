"""Jeu de taquin property checkers and the fair-chart simulator.

Three independent tiers decide the property:

* ``is_jdt_definition``: every ideal, every red numbering, every green numbering;
* ``is_jdt_challenges``: every challenge has a solution;
* ``is_jdt``: every crucial challenge has a solution (the production checker).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import EngineInvariantError, NotAFilter, NotAnExtension, SizeLimitExceeded
from .poset import (Poset, bits, ideal_masks, is_filter_mask, linear_extensions,
                    to_mask)
from .sliding import TEST_A, TEST_B, empty_labels, labels_from, slide_labels, slide_labels_path

DEFINITION_LIMIT = 8
FAIR_LIMIT = 8


@dataclass(frozen=True)
class Challenge:
    ideal: int  # mask
    rho: tuple[int, ...]  # elements of the ideal in increasing rank
    x: int
    y: int

    @property
    def rho_numbering(self) -> dict[int, int]:
        return {e: k + 1 for k, e in enumerate(self.rho)}

    def describe(self) -> dict:
        return {"ideal": sorted(bits(self.ideal)), "rho": self.rho_numbering, "pair": [self.x, self.y]}


def upper_set(P: Poset, x: int, y: int) -> int:
    """Mask of the filter generated by ``x`` and ``y``."""
    return P.up[x] | P.up[y]


def crucial_pairs(P: Poset) -> list[tuple[int, int]]:
    out = []
    for x in range(P.n):
        for y in range(x + 1, P.n):
            if P.leq(x, y) or P.leq(y, x):
                continue
            if set(P.upper[x]) != set(P.upper[y]):
                continue
            common = P.down[x] & P.down[y]
            if common:
                out.append((x, y))
    return out


def _test_start(P: Poset, rho: Sequence[int], x: int, y: int):
    lower = P.lower
    ba = labels_from(P, rho)
    ab = list(ba)
    path_a = slide_labels_path(ba, x, lower)
    slide_labels(ba, y, lower)
    path_b = slide_labels_path(ab, y, lower)
    slide_labels(ab, x, lower)
    return ba, ab, path_a, path_b


def has_solution(P: Poset, ch: Challenge) -> dict[int, object] | None:
    """Smallest-``J``-first search for an xy-test numbering whose two test
    emptyings leave the labels in the same places.

    Returns the solution as an element -> bubble-id map, or ``None``.
    """
    lower = P.lower
    x, y = ch.x, ch.y
    rest = P.full & ~ch.ideal
    ba, ab, path_a, path_b = _test_start(P, ch.rho, x, y)
    if not set(path_a) & set(path_b):
        if ba != ab:
            raise EngineInvariantError(f"disjoint test paths but unequal emptyings for {ch.describe()}")
        return {x: TEST_A, y: TEST_B}
    if ba == ab:
        return {x: TEST_A, y: TEST_B}
    start = 1 << x | 1 << y
    level = [((), start, ba, ab)]
    seen = {(start, tuple(ba), tuple(ab))}
    while level:
        nxt = []
        for prefix, J, ba, ab in level:
            for v in bits(rest & ~J):
                if P.down[v] & rest & ~J != 1 << v:
                    continue
                nba = list(ba)
                slide_labels(nba, v, lower)
                nab = list(ab)
                slide_labels(nab, v, lower)
                if nba == nab:
                    gamma = {x: TEST_A, y: TEST_B}
                    for k, e in enumerate(prefix + (v,)):
                        gamma[e] = k + 1
                    return gamma
                NJ = J | 1 << v
                key = (NJ, tuple(nba), tuple(nab))
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((prefix + (v,), NJ, nba, nab))
        level = nxt
    if not P.down[x] & P.down[y]:
        raise EngineInvariantError(f"unsolvable challenge without a common lower bound: {ch.describe()}")
    return None


def crucial_challenges(P: Poset, pair: tuple[int, int]) -> Iterator[Challenge]:
    x, y = pair
    ideal = P.full & ~upper_set(P, x, y)
    for rho in linear_extensions(P, ideal):
        yield Challenge(ideal, rho, x, y)


def all_challenges(P: Poset) -> Iterator[Challenge]:
    for ideal in ideal_masks(P):
        rest = P.full & ~ideal
        mins = [e for e in bits(rest) if P.down[e] & rest == 1 << e]
        if len(mins) < 2:
            continue
        for rho in linear_extensions(P, ideal):
            for i, x in enumerate(mins):
                for y in mins[i + 1:]:
                    yield Challenge(ideal, rho, x, y)


def find_unsolved_crucial(P: Poset) -> Challenge | None:
    for pair in crucial_pairs(P):
        for ch in crucial_challenges(P, pair):
            if has_solution(P, ch) is None:
                return ch
    return None


def is_jdt(P: Poset) -> bool:
    """Every crucial challenge has a solution."""
    return find_unsolved_crucial(P) is None


def is_jdt_challenges(P: Poset, limit: int = DEFINITION_LIMIT) -> bool:
    if P.n > limit:
        raise SizeLimitExceeded(f"challenge tier limited to {limit} elements")
    return all(has_solution(P, ch) is not None for ch in all_challenges(P))


def is_jdt_definition(P: Poset, limit: int = DEFINITION_LIMIT) -> bool:
    """Literal definition: the emptying result never depends on the green numbering."""
    if P.n > limit:
        raise SizeLimitExceeded(f"definition tier limited to {limit} elements")
    for ideal in ideal_masks(P):
        rest = P.full & ~ideal
        if rest == 0:
            continue
        greens = list(linear_extensions(P, rest))
        if len(greens) < 2:
            continue
        for rho in linear_extensions(P, ideal):
            first = empty_labels(P, rho, greens[0])
            for g in greens[1:]:
                if empty_labels(P, rho, g) != first:
                    return False
    return True


# --- fair charts ---------------------------------------------------------

def _check_extension(P: Poset, ext: Mapping[int, int]) -> None:
    if sorted(ext) != list(range(P.n)) or sorted(ext.values()) != list(range(1, P.n + 1)):
        raise NotAnExtension("seniorities must be a bijection onto 1..n")
    for lo, hi in P.covers:
        if ext[lo] > ext[hi]:
            raise NotAnExtension(f"position {lo} outranks its superior {hi}")


def simulate_departure(P: Poset, ext: Mapping[int, int], F) -> dict[int, int]:
    """Vacate the filter ``F`` and refill positions from below.

    Vacancies are handled in increasing seniority of the departed employees;
    each is refilled by the most senior immediate subordinate until it reaches a
    position with no occupied subordinates. Returns position -> seniority for
    the survivors.
    """
    _check_extension(P, ext)
    fmask = F if isinstance(F, int) else to_mask(F)
    if not is_filter_mask(P, fmask):
        raise NotAFilter(f"{sorted(bits(fmask))} is not a filter")
    staff = {p: s for p, s in ext.items() if not fmask >> p & 1}
    for vacancy in sorted(bits(fmask), key=lambda p: ext[p]):
        p = vacancy
        while True:
            below = [q for q in P.lower[p] if q in staff]
            if not below:
                break
            q = max(below, key=staff.__getitem__)
            staff[p] = staff.pop(q)
            p = q
    return staff


def fair_chart_violation(P: Poset, limit: int = FAIR_LIMIT):
    """First (filter, ext1, ext2) whose survivors end differently, or ``None``."""
    if P.n > limit:
        raise SizeLimitExceeded(f"fair chart check limited to {limit} elements")
    exts = [{e: k + 1 for k, e in enumerate(seq)} for seq in linear_extensions(P)]
    for ideal in ideal_masks(P):
        F = P.full & ~ideal
        outcomes: dict[tuple, tuple] = {}
        for ext in exts:
            survivors = tuple(sorted((p, s) for p, s in ext.items() if ideal >> p & 1))
            final = tuple(sorted(simulate_departure(P, ext, F).items()))
            prev = outcomes.setdefault(survivors, (final, ext))
            if prev[0] != final:
                return F, prev[1], ext
    return None


def is_fair_chart(P: Poset, limit: int = FAIR_LIMIT) -> bool:
    return fair_chart_violation(P, limit) is None


def fair_chart_scenarios(P: Poset) -> int:
    """Initial patterns times upper echelons."""
    from .poset import linear_extensions_count
    return linear_extensions_count(P) * len(ideal_masks(P))
