"""Finite posets on the elements ``0..n-1``.

Element sets are handled internally as integer bitmasks (bit ``i`` set means
element ``i`` is present); the public helpers return ``frozenset`` values.
A *numbering* is a ``dict`` mapping elements to ranks ``1..len``; the
enumerators yield plain tuples listing the elements in increasing rank,
which is what the sliding kernels consume.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import CycleDetected, NotComparable, PosetError, RedundantCover, SizeLimitExceeded

CANONICAL_LIMIT = 12


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


class Poset:
    """Immutable finite poset given by its cover relation.

    ``covers`` holds pairs ``(lo, hi)`` with ``lo`` covered by ``hi``.
    ``down[i]`` / ``up[i]`` are bitmasks of the elements ``<= i`` / ``>= i``.
    """

    __slots__ = ("n", "covers", "upper", "lower", "down", "up", "dropped", "__dict__")

    def __init__(self, n: int, covers: Iterable[tuple[int, int]], *, strict: bool = True):
        if n < 0:
            raise PosetError("negative element count")
        pairs = set()
        for lo, hi in covers:
            lo, hi = int(lo), int(hi)
            if not (0 <= lo < n and 0 <= hi < n):
                raise PosetError(f"cover ({lo}, {hi}) references an element outside 0..{n - 1}")
            if lo == hi:
                raise CycleDetected(f"self-loop at {lo}")
            pairs.add((lo, hi))
        order = _topological_order(n, pairs)
        down = [1 << i for i in range(n)]
        for v in order:
            for lo, hi in pairs:
                if hi == v:
                    down[v] |= down[lo]
        # a cover (lo, hi) is redundant if lo lies strictly below some other lower cover of hi
        redundant = []
        for lo, hi in sorted(pairs):
            for lo2, hi2 in pairs:
                if hi2 == hi and lo2 != lo and down[lo2] >> lo & 1:
                    redundant.append((lo, hi))
                    break
        if redundant and strict:
            raise RedundantCover(f"covers implied by transitivity: {redundant}")
        self.n = n
        self.dropped = tuple(redundant)
        self.covers = tuple(sorted(pairs - set(redundant)))
        self._finish(down)

    def _finish(self, down: list[int]) -> None:
        n = self.n
        upper: list[list[int]] = [[] for _ in range(n)]
        lower: list[list[int]] = [[] for _ in range(n)]
        for lo, hi in self.covers:
            upper[lo].append(hi)
            lower[hi].append(lo)
        self.upper = tuple(tuple(u) for u in upper)
        self.lower = tuple(tuple(d) for d in lower)
        self.down = tuple(down)
        up = [0] * n
        for i in range(n):
            for j in bits(down[i]):
                up[j] |= 1 << i
        self.up = tuple(up)

    @classmethod
    def _from_reduced(cls, n: int, covers: Sequence[tuple[int, int]], down: Sequence[int]) -> "Poset":
        # trusted fast path: covers already a transitive reduction with matching down masks
        self = cls.__new__(cls)
        self.n = n
        self.dropped = ()
        self.covers = tuple(sorted(covers))
        self._finish(list(down))
        return self

    @classmethod
    def from_down_masks(cls, down: Sequence[int]) -> "Poset":
        """Build from reflexive down-set masks (``down[i]`` contains ``i``)."""
        n = len(down)
        covers = []
        for hi in range(n):
            strict = down[hi] & ~(1 << hi)
            below = 0
            for lo in bits(strict):
                below |= down[lo] & ~(1 << lo)
            for lo in bits(strict & ~below):
                covers.append((lo, hi))
        return cls._from_reduced(n, covers, down)

    # --- basic relations -------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def covered_by(self, lo: int, hi: int) -> bool:
        return hi in self.upper[lo]

    @cached_property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.leq(a, b) for b in range(self.n)) for a in range(self.n))

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.n) if not self.upper[i]]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.n) if not self.lower[i]]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.covers)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.n, self.covers))

    # --- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict, *, strict: bool = True) -> "Poset":
        return cls(int(data["n"]), [tuple(c) for c in data["covers"]], strict=strict)


def _topological_order(n: int, pairs: set[tuple[int, int]]) -> list[int]:
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for lo, hi in pairs:
        indeg[hi] += 1
        succ[lo].append(hi)
    stack = [i for i in range(n) if indeg[i] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != n:
        raise CycleDetected("cover relation contains a directed cycle")
    return order


def from_covers(n: int, covers: Iterable[tuple[int, int]], *, strict: bool = True) -> Poset:
    """Validate a cover list. In lenient mode redundant pairs are dropped and
    listed in ``Poset.dropped``."""
    return Poset(n, covers, strict=strict)


def chain(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset(n, [])


def load(path) -> Poset:
    with open(path) as fh:
        return Poset.from_dict(json.load(fh))


def dump(P: Poset, path) -> None:
    with open(path, "w") as fh:
        json.dump(P.to_dict(), fh)
        fh.write("\n")


# --- connectivity ----------------------------------------------------------

def components(P: Poset) -> list[int]:
    """Connected components of the cover diagram as masks, ordered by least element."""
    seen = 0
    comps = []
    for start in range(P.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in P.upper[v] + P.lower[v]:
                if not comp >> w & 1:
                    comp |= 1 << w
                    frontier.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(P: Poset) -> bool:
    return len(components(P)) <= 1


def has_unique_max(P: Poset) -> bool:
    return len(P.maximal_elements()) == 1


# --- ideals and filters ----------------------------------------------------

def is_ideal_mask(P: Poset, mask: int) -> bool:
    return all(P.down[e] & ~mask == 0 for e in bits(mask))


def is_filter_mask(P: Poset, mask: int) -> bool:
    return all(P.up[e] & ~mask == 0 for e in bits(mask))


def is_ideal(P: Poset, S: Iterable[int]) -> bool:
    return is_ideal_mask(P, to_mask(S))


def is_filter(P: Poset, S: Iterable[int]) -> bool:
    return is_filter_mask(P, to_mask(S))


def ideal_masks(P: Poset, within: int | None = None) -> list[int]:
    """All ideals of the subposet ``within`` (itself assumed convex or an
    ideal/filter) as masks, sorted by size then by element list."""
    if within is None:
        within = P.full
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for I in frontier:
            for e in bits(within & ~I):
                if P.down[e] & within & ~I == 1 << e:
                    J = I | 1 << e
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda m: (m.bit_count(), tuple(bits(m))))


def ideals(P: Poset) -> Iterator[frozenset[int]]:
    """All down-closed subsets, from the empty set up to ``P``."""
    for m in ideal_masks(P):
        yield frozenset(bits(m))


def filters(P: Poset) -> Iterator[frozenset[int]]:
    for m in ideal_masks(P):
        yield frozenset(bits(P.full & ~m))


# --- derived posets --------------------------------------------------------

def interval(P: Poset, x: int, y: int) -> frozenset[int]:
    if not P.leq(x, y):
        raise NotComparable(f"{x} is not below {y}")
    return frozenset(bits(P.up[x] & P.down[y]))


def order_dual(P: Poset) -> Poset:
    return Poset._from_reduced(P.n, [(hi, lo) for lo, hi in P.covers], P.up)


def restrict(P: Poset, S: Iterable[int]) -> Poset:
    """Induced subposet on ``S``; new index ``k`` stands for ``sorted(S)[k]``."""
    elems = sorted(set(S))
    index = {e: k for k, e in enumerate(elems)}
    down = []
    for e in elems:
        m = 0
        for f in elems:
            if P.leq(f, e):
                m |= 1 << index[f]
        down.append(m)
    return Poset.from_down_masks(down)


def restrict_mask(P: Poset, mask: int) -> Poset:
    return restrict(P, bits(mask))


def relabel(P: Poset, perm: Sequence[int]) -> Poset:
    """Isomorphic copy in which element ``i`` becomes ``perm[i]``."""
    return Poset(P.n, [(perm[lo], perm[hi]) for lo, hi in P.covers])


# --- canonical forms -------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    covers: tuple[tuple[int, int], ...]

    @property
    def digest(self) -> str:
        text = f"{self.n}:" + ",".join(f"{a}-{b}" for a, b in self.covers)
        return hashlib.sha1(text.encode()).hexdigest()[:16]

    def poset(self) -> Poset:
        return Poset(self.n, self.covers)


def _refine(P: Poset, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition using cover neighbourhoods."""
    n = P.n
    while True:
        color = [0] * n
        for idx, cell in enumerate(cells):
            for e in cell:
                color[e] = idx
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for e in cell:
                key = (tuple(sorted(color[u] for u in P.upper[e])),
                       tuple(sorted(color[d] for d in P.lower[e])))
                groups.setdefault(key, []).append(e)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    new_cells.append(groups[key])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _code(P: Poset, order: Sequence[int]) -> tuple[tuple[int, int], ...]:
    pos = {e: k for k, e in enumerate(order)}
    return tuple(sorted((pos[lo], pos[hi]) for lo, hi in P.covers))


def _canonical_connected(P: Poset, mask: int) -> tuple[tuple[tuple[int, int], ...], list[int]]:
    elems = list(bits(mask))
    inv = {}
    for e in elems:
        inv[e] = ((P.down[e] & mask).bit_count(), (P.up[e] & mask).bit_count(),
                  len(P.lower[e]), len(P.upper[e]))
    groups: dict[tuple, list[int]] = {}
    for e in elems:
        groups.setdefault(inv[e], []).append(e)
    cells = _refine(P, [groups[k] for k in sorted(groups)])
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code_sub(P, order)
            if best[0] is None or code < best[0]:
                best[0] = code
                best[1] = order
            return
        cell = cells[target]
        tried: list[tuple] = []
        for v in cell:
            sig = (P.upper[v], P.lower[v])
            # twins (same upper and lower covers) are exchanged by an automorphism
            if sig in tried:
                continue
            tried.append(sig)
            rest = [e for e in cell if e != v]
            search(_refine(P, cells[:target] + [[v], rest] + cells[target + 1:]))

    search(cells)
    return best[0], best[1]


def _code_sub(P: Poset, order: Sequence[int]) -> tuple[tuple[int, int], ...]:
    pos = {e: k for k, e in enumerate(order)}
    return tuple(sorted((pos[lo], pos[hi]) for lo, hi in P.covers if lo in pos))


def canonical_labeling(P: Poset, limit: int = CANONICAL_LIMIT) -> tuple[CanonicalForm, list[int]]:
    """Canonical form plus ``order`` with ``order[k]`` the element placed at
    canonical index ``k``."""
    if P.n > limit:
        raise SizeLimitExceeded(f"canonical form limited to {limit} elements, got {P.n}")
    parts = []
    for comp in components(P):
        code, order = _canonical_connected(P, comp)
        parts.append((len(order), code, order))
    # components sorted by (size, code): disjoint unions get a canonical layout
    parts.sort(key=lambda t: (t[0], t[1]))
    covers = []
    full_order: list[int] = []
    for size, code, order in parts:
        off = len(full_order)
        covers.extend((a + off, b + off) for a, b in code)
        full_order.extend(order)
    return CanonicalForm(P.n, tuple(sorted(covers))), full_order


def canonical_form(P: Poset, limit: int = CANONICAL_LIMIT) -> CanonicalForm:
    return canonical_labeling(P, limit)[0]


def canonical_poset(P: Poset) -> Poset:
    form, order = canonical_labeling(P)
    return Poset._from_reduced(P.n, form.covers, _permute_down(P, order))


def _permute_down(P: Poset, order: Sequence[int]) -> list[int]:
    pos = {e: k for k, e in enumerate(order)}
    down = []
    for e in order:
        m = 0
        for f in bits(P.down[e]):
            m |= 1 << pos[f]
        down.append(m)
    return down


def is_isomorphic(P: Poset, Q: Poset, limit: int = CANONICAL_LIMIT) -> bool:
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return False
    return canonical_form(P, limit) == canonical_form(Q, limit)


def brute_force_canonical(P: Poset) -> tuple:
    """Minimum cover code over all ``n!`` relabelings. Reference oracle only."""
    best = None
    for perm in permutations(range(P.n)):
        code = tuple(sorted((perm[lo], perm[hi]) for lo, hi in P.covers))
        if best is None or code < best:
            best = code
    return best


# --- linear extensions -----------------------------------------------------

def linear_extensions_count(P: Poset, within: int | None = None) -> int:
    """Number of linear extensions of the subposet ``within`` (an ideal, filter
    or any convex set), by dynamic programming over its ideal lattice."""
    if within is None:
        within = P.full
    down = [P.down[i] & within for i in range(P.n)]
    counts = {0: 1}
    frontier = {0}
    size = within.bit_count()
    for _ in range(size):
        nxt: dict[int, int] = {}
        for I in frontier:
            c = counts[I]
            for e in bits(within & ~I):
                if down[e] & ~I == 1 << e:
                    J = I | 1 << e
                    nxt[J] = nxt.get(J, 0) + c
        counts.update(nxt)
        frontier = set(nxt)
    return counts.get(within, 0)


def linear_extensions(P: Poset, within: int | Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each linear extension of the subposet once as the tuple of its
    elements in increasing rank. Order is lexicographic in the chosen
    minimal elements."""
    if within is None:
        within = P.full
    elif not isinstance(within, int):
        within = to_mask(within)
    down = [P.down[i] & within for i in range(P.n)]
    size = within.bit_count()
    seq: list[int] = []

    def rec(placed: int) -> Iterator[tuple[int, ...]]:
        if len(seq) == size:
            yield tuple(seq)
            return
        for e in bits(within & ~placed):
            if down[e] & ~placed == 1 << e:
                seq.append(e)
                yield from rec(placed | 1 << e)
                seq.pop()

    yield from rec(0)


def numbering_from_sequence(seq: Sequence[int], start: int = 1) -> dict[int, int]:
    return {e: k + start for k, e in enumerate(seq)}


def is_numbering(P: Poset, numbering: dict[int, int]) -> bool:
    """Bijection onto ``1..len`` that is order preserving."""
    if sorted(numbering.values()) != list(range(1, len(numbering) + 1)):
        return False
    return all(numbering[a] <= numbering[b] for a in numbering for b in numbering if P.leq(a, b))
