"""Jeu de taquin sliding on posets.

A bubble (vacancy) swaps with the largest label among the elements it covers,
and keeps doing so until it covers no label. Bubbles never trade places with
other bubbles or with unoccupied elements.

Two layers live here. ``Snapshot`` is the inspectable value type with paths and
a swap log, used by the CLI and the collision engine. The ``*_labels``
functions are the bare kernel used by the exhaustive checkers: a list holding
the label rank at each element and ``0`` everywhere else.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .errors import MalformedBiNumbering, UnknownBubble
from .poset import Poset, is_ideal_mask, to_mask

TEST_A = "A"
TEST_B = "B"
BubbleId = Hashable


class Swap(NamedTuple):
    bubble: BubbleId
    src: int
    dst: int
    label: int


@dataclass
class BiNumbering:
    """Green bubbles and red labels on disjoint sets of elements.

    ``green`` maps elements to bubble ids (``"A"``, ``"B"`` or ``1, 2, ...``);
    ``red`` maps elements to ranks ``1..r``.
    """

    green: dict[int, BubbleId]
    red: dict[int, int]

    @property
    def is_test(self) -> bool:
        return TEST_A in self.green.values() or TEST_B in self.green.values()

    def indexed(self) -> list[int]:
        return sorted(b for b in self.green.values() if isinstance(b, int))

    def validate(self, P: Poset) -> None:
        g, r = set(self.green), set(self.red)
        if g & r:
            raise MalformedBiNumbering(f"elements carry both a bubble and a label: {sorted(g & r)}")
        for e in g | r:
            if not 0 <= e < P.n:
                raise MalformedBiNumbering(f"element {e} outside the poset")
        if sorted(self.red.values()) != list(range(1, len(self.red) + 1)):
            raise MalformedBiNumbering("red ranks must be 1..r")
        ids = list(self.green.values())
        idx = self.indexed()
        if idx != list(range(1, len(idx) + 1)):
            raise MalformedBiNumbering("indexed bubbles must be 1..g")
        if len(set(ids)) != len(ids):
            raise MalformedBiNumbering("duplicate bubble id")
        if any(not isinstance(b, int) and b not in (TEST_A, TEST_B) for b in ids):
            raise MalformedBiNumbering("bubble ids must be 'A', 'B' or positive integers")
        for a, ra in self.red.items():
            for b, rb in self.red.items():
                if P.lt(a, b) and ra > rb:
                    raise MalformedBiNumbering(f"red numbering not order preserving at {a} < {b}")
        # A and B sit below every indexed bubble and are mutually unconstrained
        key = {TEST_A: 0, TEST_B: 0}
        for a, ga in self.green.items():
            for b, gb in self.green.items():
                if P.lt(a, b) and key.get(ga, ga) > key.get(gb, gb):
                    raise MalformedBiNumbering(f"green numbering not order preserving at {a} < {b}")
        domain = to_mask(g | r)
        if self.is_test:
            if not is_ideal_mask(P, domain):
                raise MalformedBiNumbering("test bi-numbering domain must be an ideal")
        elif domain != P.full:
            raise MalformedBiNumbering("plain bi-numbering must cover every element")

    @classmethod
    def from_json(cls, data: Mapping) -> "BiNumbering":
        green = {}
        for k, v in data.get("green", {}).items():
            green[int(k)] = v if v in (TEST_A, TEST_B) else int(v)
        red = {int(k): int(v) for k, v in data.get("red", {}).items()}
        return cls(green, red)

    def to_json(self) -> dict:
        return {"green": {str(k): v for k, v in sorted(self.green.items())},
                "red": {str(k): v for k, v in sorted(self.red.items())}}


class Snapshot:
    """Placement of bubbles and labels mid-emptying, with per-bubble paths."""

    __slots__ = ("poset", "labels", "where", "at", "paths", "history")

    def __init__(self, poset: Poset, labels: list[int], where: dict, paths: dict | None = None,
                 history: list | None = None):
        self.poset = poset
        self.labels = labels
        self.where = where
        self.at = [None] * poset.n
        for b, e in where.items():
            self.at[e] = b
        self.paths = paths if paths is not None else {b: [e] for b, e in where.items()}
        self.history = history if history is not None else []

    @classmethod
    def from_binumbering(cls, P: Poset, bn: BiNumbering) -> "Snapshot":
        labels = [0] * P.n
        for e, r in bn.red.items():
            labels[e] = r
        return cls(P, labels, {b: e for e, b in bn.green.items()})

    def copy(self) -> "Snapshot":
        return Snapshot(self.poset, list(self.labels), dict(self.where),
                        {b: list(p) for b, p in self.paths.items()}, list(self.history))

    def position(self, b: BubbleId) -> int:
        try:
            return self.where[b]
        except KeyError:
            raise UnknownBubble(f"no bubble {b!r} in snapshot") from None

    def placement(self) -> list:
        """Per element: ``("bubble", id)``, ``("label", rank)`` or ``None``."""
        out = []
        for e in range(self.poset.n):
            if self.at[e] is not None:
                out.append(("bubble", self.at[e]))
            elif self.labels[e]:
                out.append(("label", self.labels[e]))
            else:
                out.append(None)
        return out

    def red(self) -> dict[int, int]:
        return {e: r for e, r in enumerate(self.labels) if r}

    def target(self, b: BubbleId) -> int | None:
        """Element the next move of ``b`` would go to, if any."""
        pos = self.position(b)
        best, tgt = 0, None
        for d in self.poset.lower[pos]:
            if self.labels[d] > best:
                best, tgt = self.labels[d], d
        return tgt

    # in-place mutators; the module-level functions wrap them with copies
    def move(self, b: BubbleId) -> bool:
        pos = self.position(b)
        tgt = self.target(b)
        if tgt is None:
            return False
        label = self.labels[tgt]
        self.labels[pos], self.labels[tgt] = label, 0
        self.at[pos], self.at[tgt] = None, b
        self.where[b] = tgt
        self.paths.setdefault(b, [pos]).append(tgt)
        self.history.append(Swap(b, pos, tgt, label))
        return True

    def slide(self, b: BubbleId) -> list[int]:
        start = len(self.paths.get(b, ())) - 1
        while self.move(b):
            pass
        return self.paths[b][max(start, 0):]

    def place_label(self, e: int, rank: int) -> None:
        if self.at[e] is not None:
            del self.where[self.at[e]]
            self.at[e] = None
        self.labels[e] = rank

    def place_bubble(self, e: int, b: BubbleId, *, new_path: bool = True) -> None:
        if self.at[e] is not None and self.at[e] in self.where:
            del self.where[self.at[e]]
        self.labels[e] = 0
        self.at[e] = b
        self.where[b] = e
        if new_path or b not in self.paths:
            self.paths[b] = [e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Snapshot):
            return NotImplemented
        return (self.labels == other.labels and self.where == other.where
                and self.paths == other.paths and self.history == other.history)


def snapshot(P: Poset, bn: BiNumbering) -> Snapshot:
    return Snapshot.from_binumbering(P, bn)


def move_once(s: Snapshot, b: BubbleId) -> Snapshot:
    out = s.copy()
    out.move(b)
    return out


def slide_out(s: Snapshot, b: BubbleId) -> Snapshot:
    out = s.copy()
    out.slide(b)
    return out


def empty(P: Poset, bn: BiNumbering, *, validate: bool = True) -> Snapshot:
    """Slide out bubbles 1, 2, ... in order."""
    if validate:
        if bn.is_test:
            raise MalformedBiNumbering("plain emptying called on a test bi-numbering")
        bn.validate(P)
    s = Snapshot.from_binumbering(P, bn)
    for b in bn.indexed():
        s.slide(b)
    return s


def test_empty(P: Poset, bn: BiNumbering, order: str, *, validate: bool = True) -> Snapshot:
    """``order="BA"`` slides A, then B, then 1..n; ``"AB"`` slides B first."""
    if order not in ("BA", "AB"):
        raise ValueError("order must be 'BA' or 'AB'")
    if validate:
        if set(bn.green.values()) & {TEST_A, TEST_B} != {TEST_A, TEST_B}:
            raise MalformedBiNumbering("test bi-numbering needs both test bubbles")
        bn.validate(P)
    s = Snapshot.from_binumbering(P, bn)
    first, second = (TEST_A, TEST_B) if order == "BA" else (TEST_B, TEST_A)
    s.slide(first)
    s.slide(second)
    for b in bn.indexed():
        s.slide(b)
    return s


def red_part(s: Snapshot) -> dict[int, int]:
    return s.red()


def path(s: Snapshot, b: BubbleId) -> list[int]:
    if b not in s.paths:
        raise UnknownBubble(f"no bubble {b!r} in snapshot")
    return list(s.paths[b])


# --- bare kernel ---------------------------------------------------------

def slide_labels(labels: list[int], pos: int, lower: Sequence[Sequence[int]]) -> int:
    """Slide a bubble at ``pos`` through ``labels`` in place; return its final element."""
    while True:
        best = 0
        tgt = -1
        for d in lower[pos]:
            v = labels[d]
            if v > best:
                best = v
                tgt = d
        if tgt < 0:
            return pos
        labels[pos] = best
        labels[tgt] = 0
        pos = tgt


def slide_labels_path(labels: list[int], pos: int, lower: Sequence[Sequence[int]]) -> list[int]:
    out = [pos]
    while True:
        best = 0
        tgt = -1
        for d in lower[pos]:
            v = labels[d]
            if v > best:
                best = v
                tgt = d
        if tgt < 0:
            return out
        labels[pos] = best
        labels[tgt] = 0
        pos = tgt
        out.append(pos)


def labels_from(P: Poset, red_seq: Sequence[int]) -> list[int]:
    """Label list with ``red_seq[k]`` carrying rank ``k + 1``."""
    labels = [0] * P.n
    for k, e in enumerate(red_seq):
        labels[e] = k + 1
    return labels


def empty_labels(P: Poset, red_seq: Sequence[int], green_seq: Iterable[int]) -> tuple[int, ...]:
    """Plain emptying on the kernel: ``green_seq`` lists bubble positions in
    slide order. Returns the final label tuple."""
    labels = labels_from(P, red_seq)
    lower = P.lower
    for pos in green_seq:
        slide_labels(labels, pos, lower)
    return tuple(labels)
