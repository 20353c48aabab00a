"""Collision repair engine and the structural helpers it relies on.

``run_simultaneous`` computes both test emptyings of a crucial challenge at
once. Whenever the two test bubbles are headed for a common element, the next
repair bubble is slid down to an element covering both of their current
positions and the local diamond is rewritten; the bubble that drops into the
collision site becomes the leader and is slid out at once. The outcome is
``Solved`` when the test bubbles eventually have disjoint paths, and every
``Solved`` outcome is re-derived with the plain sliding engine before it is
returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dcomplete import delta_intervals, is_d3_complete, is_dcomplete
from .errors import EngineInvariantError, NoUniqueMax, NotDComplete, WAmbiguous
from .jdt import crucial_pairs, upper_set
from .poset import Poset, bits, components, is_ideal_mask, linear_extensions, restrict_mask
from .sliding import TEST_A, TEST_B, Snapshot, labels_from, slide_labels


# --- top tree and slant decomposition -------------------------------------

def unique_max(P: Poset) -> int:
    tops = P.maximal_elements()
    if len(tops) != 1:
        raise NoUniqueMax(f"expected one maximal element, found {tops}")
    return tops[0]


def top_tree(P: Poset) -> frozenset[int]:
    """Elements ``x`` for which ``[x, t]`` is a chain (``t`` the maximum)."""
    t = unique_max(P)
    out = []
    for x in range(P.n):
        iv = P.up[x] & P.down[t]
        if all(iv & ~(P.down[e] | P.up[e]) == 0 for e in bits(iv)):
            out.append(x)
    return frozenset(out)


def acyclic_elements(P: Poset) -> frozenset[int]:
    T = top_tree(P)
    cyclic = set()
    for d in delta_intervals(P):
        if d.b == d.n:
            cyclic.update(d.upper)
    return frozenset(T - cyclic)


def slant_edges(P: Poset) -> list[tuple[int, int]]:
    T = top_tree(P)
    acyc = acyclic_elements(P)
    return [(lo, hi) for lo, hi in P.covers if lo in T and hi in T and hi in acyc]


def slant_component_masks(P: Poset) -> list[int]:
    cut = set(slant_edges(P))
    kept = Poset._from_reduced(P.n, [c for c in P.covers if c not in cut], _down_without(P, cut))
    return components(kept)


def _down_without(P: Poset, cut: set) -> list[int]:
    covers = [c for c in P.covers if c not in cut]
    down = [1 << i for i in range(P.n)]
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            new = down[hi] | down[lo]
            if new != down[hi]:
                down[hi] = new
                changed = True
    return down


def slant_components(P: Poset) -> list[Poset]:
    """Components left after deleting every slant edge; index ``k`` of each
    component is the ``k``-th smallest original element in it."""
    return [restrict_mask(P, m) for m in slant_component_masks(P)]


# --- the engine -----------------------------------------------------------

@dataclass
class CollisionRecord:
    m: int
    site: int  # w_m
    x: int  # x_m, where the first test bubble waits
    y: int  # y_m
    repair_site: int  # z_m
    sigma: int  # label at the collision site
    repair_start: int  # v_m
    repair_path: list[int]
    leader_path: list[int]

    def to_dict(self) -> dict:
        return {"m": self.m, "w": self.site, "x": self.x, "y": self.y, "z": self.repair_site,
                "sigma": self.sigma, "v": self.repair_start,
                "fixer_path": self.repair_path, "leader_path": self.leader_path}


@dataclass
class SimOutcome:
    solved: bool
    m: int
    strong: bool = False
    trace: list[CollisionRecord] = field(default_factory=list)
    condition: str | None = None  # failing capability condition: 'i'..'iv'
    gamma: dict | None = None  # the solution restricted to x, y, v_1..v_m

    def to_dict(self) -> dict:
        out = {"solved": self.solved, "m": self.m, "trace": [r.to_dict() for r in self.trace]}
        if self.solved:
            out["strong"] = self.strong
            out["gamma"] = {str(k): v for k, v in sorted(self.gamma.items())}
        else:
            out["condition"] = self.condition
        return out


def _advance(s: Snapshot, bubble, probed: Sequence[int], stop: int) -> None:
    for step in probed[1:stop]:
        if s.target(bubble) != step:
            raise EngineInvariantError(f"bubble {bubble} left its probed path at {step}")
        s.move(bubble)


def run_simultaneous(P: Poset, pair: tuple[int, int], rho: Sequence[int], repair: Sequence[int], *,
                     acyclic: frozenset[int] | None = None, d3: bool = False,
                     verify: bool = True) -> SimOutcome:
    """Simultaneous test emptying for the crucial challenge ``(pair, rho)``.

    ``rho`` lists the ideal ``P - <x, y>`` in increasing rank and ``repair``
    lists the positions of ``G_1, G_2, ...``. ``acyclic`` enables the
    strongness bookkeeping; ``d3`` turns on the assertions that hold for
    d3-complete posets.
    """
    x, y = pair
    s = Snapshot(P, labels_from(P, rho), {("A", 1): x, ("B", 1): y})
    for i, v in enumerate(repair, 1):
        s.place_bubble(v, ("G", i))
    a, b = ("A", 1), ("B", 1)
    strong = True
    trace: list[CollisionRecord] = []
    m = 0
    while True:
        pa = s.copy()
        path_a = pa.slide(a)
        pb = s.copy()
        path_b = pb.slide(b)
        common = set(path_a) & set(path_b)
        if not common:
            break
        w = next(e for e in path_a if e in common)
        if next(e for e in path_b if e in common) != w:
            raise WAmbiguous(f"earliest common element differs along the two paths ({path_a}, {path_b})")
        m += 1
        if m > len(repair):
            return SimOutcome(False, m, trace=trace, condition="i")
        ia, ib = path_a.index(w), path_b.index(w)
        xm, ym = path_a[ia - 1], path_b[ib - 1]
        _advance(s, a, path_a, ia)
        _advance(s, b, path_b, ib)
        sigma = s.labels[w]
        g = ("G", m)
        start = s.position(g)
        tops = [z for z in P.upper[xm] if z in P.upper[ym]]
        if d3 and len(tops) != 1:
            raise EngineInvariantError(f"d3-complete poset without a unique repair site over {xm}, {ym}")
        while s.position(g) not in tops:
            if not s.move(g):
                return SimOutcome(False, m, trace=trace, condition="ii" if not tops else "iii")
        z = s.position(g)
        repair_path = s.paths[g][s.paths[g].index(start):]
        for c in P.lower[z]:
            if c not in (xm, ym) and s.labels[c] > sigma:
                if d3:
                    raise EngineInvariantError("condition (iv) failed in a d3-complete poset")
                return SimOutcome(False, m, trace=trace, condition="iv")
        leader = ("L", m)
        s.place_label(z, sigma)
        s.place_bubble(w, leader)
        s.place_bubble(xm, ("A", m + 1))
        s.place_bubble(ym, ("B", m + 1))
        a, b = ("A", m + 1), ("B", m + 1)
        leader_path = s.slide(leader)
        if acyclic is not None and (acyclic.intersection(repair_path) or acyclic.intersection(leader_path)):
            strong = False
        trace.append(CollisionRecord(m, w, xm, ym, z, sigma, start, repair_path, leader_path))

    gamma = {x: TEST_A, y: TEST_B}
    for i, v in enumerate(repair[:m], 1):
        gamma[v] = i
    if verify:
        _cross_check(P, pair, rho, repair[:m], s, a, b)
    return SimOutcome(True, m, strong=strong if acyclic is not None else False, trace=trace, gamma=gamma)


def _cross_check(P: Poset, pair, rho, repair, s: Snapshot, a, b) -> None:
    """Re-run both test emptyings of the truncated numbering from scratch."""
    x, y = pair
    domain = 0
    for e in list(rho) + [x, y] + list(repair):
        domain |= 1 << e
    if not is_ideal_mask(P, domain):
        raise EngineInvariantError("truncated test numbering is not on an ideal")
    lower = P.lower
    ba = labels_from(P, rho)
    ab = list(ba)
    for order, labels in (((x, y), ba), ((y, x), ab)):
        for pos in order:
            slide_labels(labels, pos, lower)
        for pos in repair:
            slide_labels(labels, pos, lower)
    if ba != ab:
        raise EngineInvariantError(f"solved outcome but test emptyings differ: pair={pair} rho={rho} repair={repair}")
    fin = s.copy()
    fin.slide(a)
    fin.slide(b)
    if fin.labels != ba:
        raise EngineInvariantError(f"simultaneous calculation diverged from the plain emptying: pair={pair} rho={rho}")


def repair_orders(P: Poset, pair: tuple[int, int]):
    """Candidate repair-bubble placements: linear extensions of ``<x,y> - {x,y}``."""
    x, y = pair
    rest = upper_set(P, x, y) & ~(1 << x | 1 << y)
    return list(linear_extensions(P, rest))


def solve_crucial(P: Poset, pair, rho, *, strong: bool = False, acyclic=None, d3: bool = False,
                  orders=None) -> SimOutcome:
    """First repair order producing a (strong) solution; else the last failure."""
    last = None
    for order in orders if orders is not None else repair_orders(P, pair):
        out = run_simultaneous(P, pair, rho, order, acyclic=acyclic, d3=d3)
        if out.solved and (out.strong or not strong):
            return out
        last = out
    return last


def find_unsimultaneous(P: Poset, *, strong: bool = False):
    """First crucial challenge without a (strong) m-simultaneous solution."""
    acyclic = acyclic_elements(P) if strong else None
    d3 = is_d3_complete(P)
    for pair in crucial_pairs(P):
        x, y = pair
        ideal = P.full & ~upper_set(P, x, y)
        orders = repair_orders(P, pair)
        for rho in linear_extensions(P, ideal):
            out = solve_crucial(P, pair, rho, strong=strong, acyclic=acyclic, d3=d3, orders=orders)
            if not (out.solved and (out.strong or not strong)):
                return pair, rho, out
    return None


def is_simultaneous(P: Poset) -> bool:
    return find_unsimultaneous(P) is None


def is_strongly_simultaneous(P: Poset) -> bool:
    return find_unsimultaneous(P, strong=True) is None


@dataclass
class CompositionReport:
    components: list[list[int]]
    strongly_simultaneous: list[bool]
    simultaneous: bool

    @property
    def all_strong(self) -> bool:
        return all(self.strongly_simultaneous)

    @property
    def consistent(self) -> bool:
        """False only for a counterexample: strong components but a
        non-simultaneous whole."""
        return self.simultaneous or not self.all_strong


def check_composition(Q: Poset) -> CompositionReport:
    if not is_dcomplete(Q):
        raise NotDComplete("composition check needs a d-complete poset")
    comps, flags = [], []
    for mask in slant_component_masks(Q):
        comps.append(list(bits(mask)))
        if mask.bit_count() > 1:
            flags.append(is_strongly_simultaneous(restrict_mask(Q, mask)))
    return CompositionReport(comps, flags, is_simultaneous(Q))
