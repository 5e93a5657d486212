"""Exact clique search on small threshold graphs (bitset Bron-Kerbosch with pivoting)."""

from __future__ import annotations

import numpy as np

from .errors import CliqueBudgetExceeded

DEFAULT_NODE_BUDGET = 10**6


def adjacency_bits(adj: np.ndarray) -> list[int]:
    """Neighbour bitmasks (no self loops) for a boolean adjacency matrix."""
    n = adj.shape[0]
    out = []
    for i in range(n):
        row = adj[i]
        mask = 0
        for j in np.flatnonzero(row):
            if j != i:
                mask |= 1 << int(j)
        out.append(mask)
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Budget:
    __slots__ = ("left",)

    def __init__(self, budget):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise CliqueBudgetExceeded("clique search exceeded its node budget")


def max_clique_size(nbrs: list[int], candidates: int | None = None, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Size of a maximum clique inside ``candidates`` (default: all vertices)."""
    if candidates is None:
        candidates = (1 << len(nbrs)) - 1
    best = 0
    meter = _Budget(budget)

    def expand(size: int, P: int, X: int):
        nonlocal best
        meter.tick()
        if not P:
            if size > best:
                best = size
            return
        if size + P.bit_count() <= best:
            return
        # pivot with the most neighbours in P
        u = max(_bits(P | X), key=lambda v: (nbrs[v] & P).bit_count())
        for v in _bits(P & ~nbrs[u]):
            expand(size + 1, P & nbrs[v], X & nbrs[v])
            P &= ~(1 << v)
            X |= 1 << v
            if size + P.bit_count() <= best:
                return

    expand(0, candidates, 0)
    return best


def maximal_cliques(nbrs: list[int], budget: int = DEFAULT_NODE_BUDGET):
    """Yield every maximal clique as a bitmask."""
    meter = _Budget(budget)

    def expand(R: int, P: int, X: int):
        meter.tick()
        if not P and not X:
            yield R
            return
        u = max(_bits(P | X), key=lambda v: (nbrs[v] & P).bit_count())
        for v in _bits(P & ~nbrs[u]):
            yield from expand(R | (1 << v), P & nbrs[v], X & nbrs[v])
            P &= ~(1 << v)
            X |= 1 << v

    yield from expand(0, (1 << len(nbrs)) - 1, 0)


def max_cross_clique_size(nbrs: list[int], left: int, right: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Largest clique meeting both vertex sets ``left`` and ``right`` (bitmasks); 0 if none.

    Every such clique contains a cross edge (u, v), so the answer is
    2 + max clique in the common neighbourhood of the best cross edge.
    """
    best = 0
    for u in _bits(left):
        for v in _bits(nbrs[u] & right):
            common = nbrs[u] & nbrs[v]
            if 2 + common.bit_count() <= best:
                continue
            size = 2 + max_clique_size(nbrs, common, budget)
            best = max(best, size)
    return best
