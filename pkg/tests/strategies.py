import random

from hypothesis import strategies as st

from taquin.poset import Poset


def poset_from_relation(n: int, less: set[tuple[int, int]]) -> Poset:
    """Transitive closure of pairs ``(i, j)`` with ``i < j`` as a Poset."""
    down = [1 << i for i in range(n)]
    for j in range(n):
        for i in range(j):
            if (i, j) in less:
                down[j] |= down[i]
    return Poset.from_down_masks(down)


@st.composite
def posets(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return poset_from_relation(n, {p for p, c in zip(pairs, chosen) if c})


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> Poset:
    less = {(i, j) for j in range(n) for i in range(j) if rng.random() < density}
    return poset_from_relation(n, less)
