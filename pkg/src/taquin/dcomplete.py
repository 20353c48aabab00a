"""d_k-intervals, d_k^- -intervals and the axioms D1-D3."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .poset import Poset, bits


@dataclass(frozen=True)
class DeltaInterval:
    """Convex set isomorphic to a double-tailed diamond.

    ``lower`` lists the lower chain from the bottom up and ``upper`` the upper
    chain from the bottom up; ``mids`` are the two incomparable elements.
    """

    bottom: int
    top: int
    mids: tuple[int, int]
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    @property
    def b(self) -> int:
        return len(self.lower)

    @property
    def n(self) -> int:
        return len(self.upper)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.lower + self.mids + self.upper)


@dataclass(frozen=True)
class DkInterval:
    k: int
    bottom: int
    top: int
    members: frozenset[int]
    mids: tuple[int, int]
    upper: tuple[int, ...]


@dataclass(frozen=True)
class DkMinusInterval:
    """For ``k == 3`` the triple ``[w; x, y]`` (``top`` is ``None``); for
    ``k >= 4`` the interval ``[bottom, top]``."""

    k: int
    bottom: int
    mids: tuple[int, int]
    top: int | None
    members: frozenset[int]


@dataclass
class Verdict:
    axiom: str
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.ok


def delta_shape(P: Poset, mask: int) -> DeltaInterval | None:
    """Recognize the induced subposet on ``mask`` as some Delta_{b,n}.

    That holds exactly when it has a single incomparable pair: every other
    element is then comparable to both and lies below both or above both.
    """
    elems = list(bits(mask))
    pair = None
    for i, a in enumerate(elems):
        for c in elems[i + 1:]:
            if not (P.down[c] >> a & 1 or P.down[a] >> c & 1):
                if pair is not None:
                    return None
                pair = (a, c)
    if pair is None:
        return None
    x, y = pair
    lower = sorted((e for e in elems if e not in pair and P.leq(e, x)), key=lambda e: (P.down[e] & mask).bit_count())
    upper = sorted((e for e in elems if e not in pair and P.leq(x, e)), key=lambda e: (P.down[e] & mask).bit_count())
    bottom = lower[0] if lower else None
    top = upper[-1] if upper else None
    return DeltaInterval(bottom, top, pair, tuple(lower), tuple(upper))


@lru_cache(maxsize=4096)
def delta_intervals(P: Poset) -> tuple[DeltaInterval, ...]:
    """Every interval [w, z] of ``P`` that is isomorphic to a Delta_{b,n} with
    b, n >= 1, sorted by (bottom, top)."""
    out = []
    for w in range(P.n):
        for z in bits(P.up[w]):
            if z == w:
                continue
            mask = P.up[w] & P.down[z]
            if mask.bit_count() < 4:
                continue
            d = delta_shape(P, mask)
            if d is not None and d.lower and d.upper:
                out.append(d)
    return tuple(out)


def find_dk_intervals(P: Poset, k: int) -> list[DkInterval]:
    if k < 3:
        raise ValueError("k must be at least 3")
    return [DkInterval(k, d.bottom, d.top, d.members, d.mids, d.upper)
            for d in delta_intervals(P) if d.b == k - 2 and d.n == k - 2]


def find_dk_minus_intervals(P: Poset, k: int) -> list[DkMinusInterval]:
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        out = []
        for w in range(P.n):
            ups = P.upper[w]
            for i, x in enumerate(ups):
                for y in ups[i + 1:]:
                    out.append(DkMinusInterval(3, w, (x, y), None, frozenset((w, x, y))))
        return out
    return [DkMinusInterval(k, d.bottom, d.mids, d.top, d.members)
            for d in delta_intervals(P) if d.b == k - 2 and d.n == k - 3]


def max_k(P: Poset) -> int:
    """Largest k for which d_k or d_k^- intervals could exist."""
    return max(3, P.n)


def _completed(P: Poset, iv: DkMinusInterval) -> bool:
    for d in find_dk_intervals(P, iv.k):
        if d.bottom != iv.bottom:
            continue
        if iv.k == 3:
            if set(d.mids) == set(iv.mids):
                return True
        elif iv.top in d.members and iv.top != d.top:
            return True
    return False


def check_d1(P: Poset, ks=None) -> Verdict:
    v = Verdict("D1")
    for k in ks or range(3, max_k(P) + 1):
        for iv in find_dk_minus_intervals(P, k):
            if not _completed(P, iv):
                v.witnesses.append(iv)
    return v


def check_d2(P: Poset, ks=None) -> Verdict:
    v = Verdict("D2")
    for k in ks or range(3, max_k(P) + 1):
        for d in find_dk_intervals(P, k):
            for c in P.lower[d.top]:
                if c not in d.members:
                    v.witnesses.append((d, c))
    return v


def check_d3(P: Poset, ks=None) -> Verdict:
    v = Verdict("D3")
    for k in ks or range(3, max_k(P) + 1):
        if k == 3:
            seen: dict[frozenset, int] = {}
            for iv in find_dk_minus_intervals(P, 3):
                key = frozenset(iv.mids)
                if key in seen and seen[key] != iv.bottom:
                    v.witnesses.append((seen[key], iv.bottom, iv.mids))
                seen.setdefault(key, iv.bottom)
            continue
        minus = {(iv.bottom, iv.top) for iv in find_dk_minus_intervals(P, k)}
        for d in find_dk_intervals(P, k - 1):
            x, y = d.bottom, d.top
            ws = [w for w in P.lower[x] if (w, y) in minus]
            for i, w in enumerate(ws):
                for w2 in ws[i + 1:]:
                    v.witnesses.append((w, w2, (x, y)))
    return v


def check_axiom(P: Poset, which: str, ks=None) -> Verdict:
    return {"D1": check_d1, "D2": check_d2, "D3": check_d3}[which.upper()](P, ks)


def is_dcomplete(P: Poset) -> bool:
    return bool(check_d1(P)) and bool(check_d2(P)) and bool(check_d3(P))


def is_d3_complete(P: Poset) -> bool:
    ks = (3,)
    return bool(check_d1(P, ks)) and bool(check_d2(P, ks)) and bool(check_d3(P, ks))


def is_nonoverlapping(P: Poset) -> bool:
    return bool(check_d3(P))


def dcomplete_report(P: Poset) -> dict[str, Verdict]:
    return {ax: check_axiom(P, ax) for ax in ("D1", "D2", "D3")}
