"""Generators for named poset families.

Shapes and shifted shapes number their boxes row-major: box ``(i, j)`` (1-based
row and column) gets the index of its position when rows are read top to
bottom, left to right. Box ``(1, 1)`` (resp. the first box of row 1) is the
unique maximum. ``box_labels`` recovers the coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InvalidPartition, NotATree, NotStrict, UnknownName
from .poset import Poset

# Minuscule posets e6(1) and e7(1), element 0 minimal. Covers are (lo, hi).
E6_1_COVERS = (
    (0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6), (4, 6), (5, 7), (6, 7), (6, 8),
    (7, 9), (8, 9), (8, 10), (9, 11), (9, 12), (10, 12), (11, 13), (12, 13), (13, 14),
    (14, 15),
)
E7_1_COVERS = (
    (0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (4, 7), (5, 6), (6, 8), (6, 9),
    (7, 9), (8, 10), (8, 11), (9, 11), (10, 12), (10, 13), (11, 13), (11, 14), (12, 15),
    (13, 15), (13, 16), (14, 16), (15, 17), (16, 17), (16, 18), (17, 19), (18, 19),
    (18, 20), (19, 21), (19, 22), (20, 22), (21, 23), (22, 23), (23, 24), (24, 25),
    (25, 26),
)


@dataclass(frozen=True)
class Shape:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class ShiftedShape:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class RootedTree:
    parents: tuple[int, ...]


@dataclass(frozen=True)
class Delta:
    b: int
    n: int


@dataclass(frozen=True)
class Minuscule:
    name: str


FamilySpec = Union[Shape, ShiftedShape, RootedTree, Delta, Minuscule]


def _check_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise InvalidPartition(f"parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise InvalidPartition(f"parts must be weakly decreasing: {parts}")
    return parts


def _boxes_poset(boxes: list[tuple[int, int]]) -> Poset:
    index = {b: k for k, b in enumerate(boxes)}
    covers = []
    for (i, j), k in index.items():
        for nb in ((i - 1, j), (i, j - 1)):
            if nb in index:
                covers.append((k, index[nb]))
    return Poset(len(boxes), covers)


def shape_boxes(parts: Sequence[int]) -> list[tuple[int, int]]:
    parts = _check_partition(parts)
    return [(i, j) for i, p in enumerate(parts, 1) for j in range(1, p + 1)]


def shifted_boxes(parts: Sequence[int]) -> list[tuple[int, int]]:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise InvalidPartition(f"parts must be positive: {parts}")
    if any(a <= b for a, b in zip(parts, parts[1:])):
        raise NotStrict(f"shifted shape needs strictly decreasing parts: {parts}")
    return [(i, j) for i, p in enumerate(parts, 1) for j in range(i, p + i)]


def shape(parts: Sequence[int]) -> Poset:
    """Young diagram poset; box (i, j) is covered by (i-1, j) and (i, j-1)."""
    return _boxes_poset(shape_boxes(parts))


def shifted_shape(parts: Sequence[int]) -> Poset:
    return _boxes_poset(shifted_boxes(parts))


def rooted_tree(parents: Sequence[int | None]) -> Poset:
    """``parents[i]`` is the node covering ``i``; the root has ``None`` or -1."""
    n = len(parents)
    roots = [i for i, p in enumerate(parents) if p is None or p < 0]
    if len(roots) != 1:
        raise NotATree(f"expected exactly one root, found {roots}")
    covers = []
    for i, p in enumerate(parents):
        if p is None or p < 0:
            continue
        if not 0 <= p < n or p == i:
            raise NotATree(f"bad parent {p} for node {i}")
        covers.append((i, p))
    # every node must reach the root
    for i in range(n):
        seen = set()
        v = i
        while parents[v] is not None and parents[v] >= 0:
            if v in seen:
                raise NotATree("parent list contains a cycle")
            seen.add(v)
            v = parents[v]
    return Poset(n, covers)


def delta_labels(b: int, n: int) -> list[str]:
    return [f"a{b - k}" for k in range(b)] + ["x0", "y0"] + [f"t{k}" for k in range(1, n + 1)]


def delta(b: int, n: int) -> Poset:
    """Double-tailed diamond: a_b < ... < a_1 < x0, y0 < t_1 < ... < t_n.

    Indices: a_b .. a_1 are 0..b-1, x0 = b, y0 = b+1, t_k = b+1+k.
    """
    if b < 0 or n < 0:
        raise ValueError("b and n must be non-negative")
    x0, y0 = b, b + 1
    covers = [(k, k + 1) for k in range(b - 1)]
    if b:
        covers += [(b - 1, x0), (b - 1, y0)]
    if n:
        covers += [(x0, b + 2), (y0, b + 2)]
        covers += [(b + 1 + k, b + 2 + k) for k in range(1, n)]
    return Poset(b + n + 2, covers)


def minuscule(name: str) -> Poset:
    """Minuscule posets by tag: ``a(n,j)``, ``d(n,n)``, ``d(n,1)``, ``e6_1``, ``e7_1``."""
    tag = name.replace(" ", "").lower()
    if tag in ("e6_1", "e6(1)"):
        return Poset(16, E6_1_COVERS)
    if tag in ("e7_1", "e7(1)"):
        return Poset(27, E7_1_COVERS)
    try:
        kind, rest = tag[0], tag[1:]
        n_str, j_str = rest.strip("()").split(",")
        n, j = int(n_str), int(j_str)
    except (IndexError, ValueError):
        raise UnknownName(f"unknown minuscule poset {name!r}") from None
    if kind == "a" and 1 <= j <= n:
        return shape([n + 1 - j] * j)
    if kind == "d" and j == n and n >= 2:
        return shifted_shape(list(range(n - 1, 0, -1)))
    if kind == "d" and j == 1 and n >= 2:
        return delta(n - 2, n - 2)
    raise UnknownName(f"unknown minuscule poset {name!r}")


def build(fam: FamilySpec) -> Poset:
    if isinstance(fam, Shape):
        return shape(fam.parts)
    if isinstance(fam, ShiftedShape):
        return shifted_shape(fam.parts)
    if isinstance(fam, RootedTree):
        return rooted_tree(fam.parents)
    if isinstance(fam, Delta):
        return delta(fam.b, fam.n)
    if isinstance(fam, Minuscule):
        return minuscule(fam.name)
    raise TypeError(f"not a family description: {fam!r}")


def all_rooted_trees(n: int):
    """Every rooted tree on ``n`` labeled nodes whose parents have larger index
    (each unlabeled tree appears at least once)."""
    if n == 1:
        yield (None,)
        return

    def rec(prefix: list):
        i = len(prefix)
        if i == n - 1:
            yield tuple(prefix) + (None,)
            return
        for p in range(i + 1, n):
            prefix.append(p)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])
