"""Isomorphism-free poset generation and the census survey."""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Iterator

from .dcomplete import is_d3_complete, is_dcomplete, is_nonoverlapping
from .errors import EngineInvariantError, SizeLimitExceeded
from .families import minuscule
from .jdt import crucial_pairs, is_jdt
from .poset import (CanonicalForm, Poset, canonical_form, canonical_labeling,
                    has_unique_max, ideal_masks, is_connected, linear_extensions_count, order_dual)
from .simultaneous import is_simultaneous

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 9


def _extend(Q: Poset) -> Iterator[Poset]:
    """All posets obtained from ``Q`` by adding a new maximal element above an ideal."""
    n = Q.n
    for ideal in ideal_masks(Q):
        yield Poset.from_down_masks(list(Q.down) + [ideal | 1 << n])


def _canonical_from(P: Poset) -> tuple[tuple, Poset]:
    form, order = canonical_labeling(P)
    pos = {e: k for k, e in enumerate(order)}
    down = []
    for e in order:
        m = 0
        for f in range(P.n):
            if P.down[e] >> f & 1:
                m |= 1 << pos[f]
        down.append(m)
    return form.covers, Poset._from_reduced(P.n, form.covers, down)


def generate_levels(n_max: int) -> Iterator[list[Poset]]:
    """Yield, for n = 1..n_max, every poset on n elements up to isomorphism
    (connected or not) in canonical labeling, sorted by canonical covers."""
    if n_max > ENUMERATION_LIMIT:
        raise SizeLimitExceeded(f"enumeration limited to {ENUMERATION_LIMIT} elements")
    level = [Poset(1, [])]
    yield level
    for n in range(2, n_max + 1):
        found: dict[tuple, Poset] = {}
        for Q in level:
            for P in _extend(Q):
                key, C = _canonical_from(P)
                if key not in found:
                    found[key] = C
        level = [found[k] for k in sorted(found)]
        log.info("n=%d: %d posets", n, len(level))
        yield level


def enumerate_all(n: int) -> list[Poset]:
    level: list[Poset] = []
    for level in generate_levels(n):
        pass
    return level


def enumerate_connected(n: int) -> list[Poset]:
    """Connected posets on ``n`` elements, one per isomorphism class."""
    return [P for P in enumerate_all(n) if is_connected(P)]


def connected_counts(n_max: int) -> list[int]:
    return [sum(1 for P in level if is_connected(P)) for level in generate_levels(n_max)]


# --- independent oracle ----------------------------------------------------

def oracle_connected_count(n: int) -> int:
    """Count connected posets by brute force: all naturally labeled order
    relations, deduplicated by a minimum over every relabeling that respects
    (down-set size, up-set size). Slow; reference only."""
    from itertools import permutations, product

    pairs = [(i, j) for j in range(n) for i in range(j)]
    classes = set()
    for choice in product((0, 1), repeat=len(pairs)):
        less = {p for p, c in zip(pairs, choice) if c}
        # transitively closed?
        if any((i, k) not in less for (i, j) in less for (j2, k) in less if j == j2):
            continue
        # connectivity of the comparability graph equals that of the diagram
        adj = {i: set() for i in range(n)}
        for i, j in less:
            adj[i].add(j)
            adj[j].add(i)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        if len(seen) != n:
            continue
        inv = [(sum(1 for (a, b) in less if b == e), sum(1 for (a, b) in less if a == e)) for e in range(n)]
        best = None
        for perm in permutations(range(n)):
            if any(inv[perm[k]] > inv[perm[k + 1]] for k in range(n - 1)):
                continue
            pos = {e: k for k, e in enumerate(perm)}
            code = tuple(sorted((pos[a], pos[b]) for a, b in less))
            if best is None or code < best:
                best = code
        classes.add(best)
    return len(classes)


# --- survey ------------------------------------------------------------------

@dataclass
class SurveyRecord:
    canonical_id: str
    n: int
    connected: bool
    unique_max: bool
    jdt: bool
    dcomplete: bool
    d3complete: bool
    nonoverlapping: bool
    simultaneous: bool
    dual_jdt: bool
    doubly_jdt: bool
    neck: int
    crucial_pairs: int
    linear_extensions: int
    covers: tuple = ()

    def row(self) -> dict:
        out = asdict(self)
        out["covers"] = json.dumps([list(c) for c in self.covers])
        return out

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def neck_size(P: Poset) -> int:
    """Informational: non-maximum elements comparable to every element."""
    tops = P.maximal_elements()
    return sum(1 for e in range(P.n)
               if len(tops) != 1 or e != tops[0]
               if (P.up[e] | P.down[e]) == P.full)


def classify(P: Poset) -> dict:
    """Per-poset flags that do not depend on the dual."""
    jdt = is_jdt(P)
    dc = is_dcomplete(P)
    # a Solved outcome is re-verified as a solution, so simultaneity is only
    # possible for posets passing the crucial-challenge jdt test
    sim = is_simultaneous(P) if jdt else False
    rec = {
        "connected": is_connected(P),
        "unique_max": has_unique_max(P),
        "jdt": jdt,
        "dcomplete": dc,
        "d3complete": is_d3_complete(P),
        "nonoverlapping": is_nonoverlapping(P),
        "simultaneous": sim,
        "neck": neck_size(P),
        "crucial_pairs": len(crucial_pairs(P)),
        "linear_extensions": linear_extensions_count(P),
    }
    if dc and not sim:
        raise EngineInvariantError(f"d-complete but not simultaneous: {P}")
    return rec


def _classify_job(args):
    n, covers = args
    return classify(Poset(n, covers))


def survey(posets: Iterable[Poset], *, workers: int = 1) -> list[SurveyRecord]:
    """Classify canonical posets; output ordered by canonical covers."""
    posets = sorted(posets, key=lambda P: (P.n, P.covers))
    jobs = [(P.n, P.covers) for P in posets]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            flags = list(ex.map(_classify_job, jobs, chunksize=64))
    else:
        flags = [_classify_job(j) for j in jobs]
    by_key = {(P.n, P.covers): f for P, f in zip(posets, flags)}
    records = []
    for P, f in zip(posets, flags):
        dual = canonical_form(order_dual(P))
        if (dual.n, dual.covers) in by_key:
            dual_jdt = by_key[(dual.n, dual.covers)]["jdt"]
        else:
            dual_jdt = is_jdt(order_dual(P))
        rec = SurveyRecord(CanonicalForm(P.n, P.covers).digest, P.n, dual_jdt=dual_jdt,
                           doubly_jdt=f["jdt"] and dual_jdt, covers=P.covers, **f)
        if rec.simultaneous and not rec.jdt:
            raise EngineInvariantError(f"simultaneous but not jdt: {rec.canonical_id}")
        records.append(rec)
    return records


def summarize(records: list[SurveyRecord]) -> dict:
    jdt = [r for r in records if r.jdt]
    return {
        "total": len(records),
        "jdt": len(jdt),
        "dcomplete": sum(r.dcomplete for r in records),
        "dcomplete_jdt": sum(r.dcomplete for r in jdt),
        "jdt_not_dcomplete": sum(not r.dcomplete for r in jdt),
        "simultaneous": sum(r.simultaneous for r in records),
        "nonoverlapping": sum(r.nonoverlapping for r in records),
        "doubly_jdt": sum(r.doubly_jdt for r in records),
        "doubly_jdt_not_dcomplete": sum(r.doubly_jdt and not r.dcomplete for r in records),
        "jdt_without_unique_max": sum(r.jdt and not r.unique_max for r in records),
        "jdt_not_dcomplete_without_neck": sum(r.jdt and not r.dcomplete and r.neck == 0 for r in records),
        "dcomplete_not_simultaneous": sum(r.dcomplete and not (r.simultaneous and r.jdt) for r in records),
        "nonoverlap_simultaneous_mismatch": sum((r.nonoverlapping and r.simultaneous) != r.dcomplete for r in records),
    }


# --- minuscule catalog and the doubly-jdt scan --------------------------------

def minuscule_catalog(n_max: int) -> dict[tuple, str]:
    """Canonical covers of connected minuscule posets with at most ``n_max`` elements."""
    cat: dict[tuple, str] = {}

    def add(P: Poset, name: str) -> None:
        if P.n <= n_max:
            cat.setdefault((P.n, canonical_form(P).covers), name)

    for n in range(1, n_max + 1):
        for j in range(1, n + 1):
            if j * (n + 1 - j) <= n_max:
                add(minuscule(f"a({n},{j})"), f"a({n},{j})")
    for n in range(2, n_max + 2):
        if n * (n - 1) // 2 <= n_max:
            add(minuscule(f"d({n},{n})"), f"d({n},{n})")
    for n in range(3, n_max + 2):
        if 2 * n - 2 <= n_max:
            add(minuscule(f"d({n},1)"), f"d({n},1)")
    for name in ("e6_1", "e7_1"):
        add(minuscule(name), name)
    return cat


def conjecture_scan(records: list[SurveyRecord], n_max: int) -> dict:
    """Connected doubly-jdt posets matched against the minuscule catalog."""
    cat = minuscule_catalog(n_max)
    matched, outliers, not_doubly_dc = [], [], []
    by_covers = {(r.n, r.covers): r for r in records}
    for r in records:
        if not (r.connected and r.doubly_jdt):
            continue
        name = cat.get((r.n, r.covers))
        dual = canonical_form(order_dual(Poset(r.n, r.covers)))
        dual_rec = by_covers.get((dual.n, dual.covers))
        doubly_dc = r.dcomplete and dual_rec is not None and dual_rec.dcomplete
        if not doubly_dc:
            not_doubly_dc.append(r.canonical_id)
        if name is None:
            outliers.append(r.canonical_id)
        else:
            matched.append((r.canonical_id, name))
    return {"doubly_jdt": len(matched) + len(outliers), "matched": matched,
            "outliers": outliers, "not_doubly_dcomplete": not_doubly_dc}


# --- files --------------------------------------------------------------------

def write_enumeration(posets: list[Poset], out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    index = []
    for P in posets:
        cid = CanonicalForm(P.n, P.covers).digest
        name = f"{cid}.json"
        with open(os.path.join(out_dir, name), "w") as fh:
            json.dump(P.to_dict(), fh)
            fh.write("\n")
        index.append({"id": cid, "n": P.n, "file": name})
    path = os.path.join(out_dir, "index.json")
    with open(path, "w") as fh:
        json.dump(index, fh, indent=1)
        fh.write("\n")
    return path
