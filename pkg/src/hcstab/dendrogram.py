"""Dendrograms as step functions from thresholds to nested partitions.

A :class:`Dendrogram` stores only its change points: ``partitions[i]`` is the
partition on ``[breakpoints[i], breakpoints[i+1])``. Blocks inside a partition
are ordered by the smallest member index in ``labels``, so two dendrograms over
the same labels are equal iff their fields are equal.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InconsistentReplay,
    NoTopMerge,
    NotNested,
    NotSingletonsAtZero,
    NotUltrametric,
    UnsortedBreakpoints,
)
from .metric import FiniteMetricSpace, Ultrametric, _frozen, distance_set, is_ultrametric, t_components


@dataclass(frozen=True)
class Dendrogram:
    labels: tuple
    breakpoints: tuple
    partitions: tuple

    @property
    def height(self) -> float:
        return self.breakpoints[-1]

    def __len__(self) -> int:
        return len(self.breakpoints)


def _order_key(labels):
    pos = {lab: i for i, lab in enumerate(labels)}
    return lambda block: min(pos[x] for x in block)


def _canon(labels, blocks) -> tuple:
    return tuple(sorted((frozenset(b) for b in blocks), key=_order_key(labels)))


def _refines(fine, coarse) -> bool:
    return all(any(b <= c for c in coarse) for b in fine)


def validate_dendrogram(labels: Sequence, breakpoints: Sequence[float], partitions: Sequence) -> Dendrogram:
    """Check the dendrogram axioms and return the canonical form.

    Breakpoints at which the partition does not change are dropped.
    """
    labels = tuple(labels)
    if len(breakpoints) != len(partitions):
        raise ValueError("breakpoints and partitions must have equal length")
    if not breakpoints:
        raise NotSingletonsAtZero("empty dendrogram")
    bps = [float(b) for b in breakpoints]
    if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
        raise UnsortedBreakpoints("breakpoints must be strictly increasing")
    universe = frozenset(labels)
    parts = []
    for p in partitions:
        blocks = [frozenset(b) for b in p]
        if any(not b for b in blocks):
            raise NotNested("empty block")
        if sum(len(b) for b in blocks) != len(universe) or frozenset().union(*blocks) != universe:
            raise NotNested("a partition must cover every label exactly once")
        parts.append(_canon(labels, blocks))
    if bps[0] != 0.0 or any(len(b) != 1 for b in parts[0]):
        raise NotSingletonsAtZero("the partition at 0 must be all singletons")
    if len(parts[-1]) != 1:
        raise NoTopMerge("the last partition must be the single block")
    for p, q in zip(parts, parts[1:]):
        if not _refines(p, q):
            raise NotNested("a block splits as the threshold grows")
    keep_b, keep_p = [bps[0]], [parts[0]]
    for b, p in zip(bps[1:], parts[1:]):
        if p != keep_p[-1]:
            keep_b.append(b)
            keep_p.append(p)
    return Dendrogram(labels, tuple(keep_b), tuple(keep_p))


def from_rounds(labels: Sequence, heights: Sequence[float], partitions: Sequence) -> Dendrogram:
    """Dendrogram of a recursive run: round ``i`` at level ``heights[i]`` produced ``partitions[i]``.

    The partition at ``r`` is the one produced by the last round whose level
    is ``<= r``; levels need not be increasing.
    """
    labels = tuple(labels)
    singletons = tuple(frozenset([x]) for x in labels)
    levels = sorted(set(float(h) for h in heights))
    bps, parts = [0.0], [singletons]
    for r in levels:
        last = max(i for i, h in enumerate(heights) if h <= r)
        if r == 0.0:
            parts[0] = partitions[last]
        else:
            bps.append(r)
            parts.append(partitions[last])
    return validate_dendrogram(labels, bps, parts)


def partition_at(theta: Dendrogram, t: float) -> tuple:
    """Partition at threshold ``t`` (right-continuous step function)."""
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    i = bisect.bisect_right(theta.breakpoints, t) - 1
    return theta.partitions[i]


def eta(theta: Dendrogram) -> Ultrametric:
    """The ultrametric u(x, y) = first breakpoint at which x and y share a block."""
    labels = theta.labels
    n = len(labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    U = np.full((n, n), np.nan)
    np.fill_diagonal(U, 0.0)
    for t, part in zip(theta.breakpoints, theta.partitions):
        for block in part:
            idx = np.array([pos[x] for x in block], dtype=np.intp)
            sub = U[np.ix_(idx, idx)]
            sub[np.isnan(sub)] = t
            U[np.ix_(idx, idx)] = sub
    return Ultrametric(labels, _frozen(U))


def eta_inverse(u: FiniteMetricSpace) -> Dendrogram:
    if not is_ultrametric(u):
        raise NotUltrametric("eta_inverse needs an ultrametric")
    bps = distance_set(u)
    parts = [t_components(u, t) for t in bps]
    return validate_dendrogram(u.labels, bps, parts)


def dendrograms_close(a: Dendrogram, b: Dendrogram, tol: float) -> bool:
    """Tolerance-aware comparison; used by experiment reports only."""
    return (
        a.labels == b.labels
        and a.partitions == b.partitions
        and all(math.isclose(x, y, rel_tol=0, abs_tol=tol) for x, y in zip(a.breakpoints, b.breakpoints))
    )


# -- merge tables ------------------------------------------------------------

@dataclass(frozen=True)
class MergeRow:
    block_a: frozenset
    block_b: frozenset
    height: float
    merged_size: int


def to_merge_table(theta: Dendrogram) -> list[MergeRow]:
    """Flatten the dendrogram into pairwise merge events.

    A block formed from k > 2 previous blocks at one height yields k - 1 rows:
    the running union absorbs the remaining children one at a time.
    """
    rows = []
    key = _order_key(theta.labels)
    for prev, (h, part) in zip(theta.partitions, zip(theta.breakpoints[1:], theta.partitions[1:])):
        for block in part:
            children = sorted((c for c in prev if c <= block), key=key)
            if len(children) < 2:
                continue
            acc = children[0]
            for child in children[1:]:
                merged = acc | child
                rows.append(MergeRow(acc, child, h, len(merged)))
                acc = merged
    return rows


def from_merge_table(labels: Sequence, rows: Iterable[MergeRow]) -> Dendrogram:
    labels = tuple(labels)
    current = {frozenset([x]) for x in labels}
    bps = [0.0]
    parts = [_canon(labels, current)]
    last_h = 0.0
    for row in rows:
        h = float(row.height)
        if h < last_h:
            raise InconsistentReplay("merge heights must be nondecreasing")
        if h <= 0:
            raise InconsistentReplay("merge heights must be positive")
        a, b = frozenset(row.block_a), frozenset(row.block_b)
        if a not in current or b not in current or a == b:
            raise InconsistentReplay(f"row at height {h} does not match the current blocks")
        if row.merged_size != len(a | b):
            raise InconsistentReplay("merged size disagrees with the blocks")
        if h > last_h and last_h > 0:
            bps.append(last_h)
            parts.append(_canon(labels, current))
        current.discard(a)
        current.discard(b)
        current.add(a | b)
        last_h = h
    if last_h > 0:
        bps.append(last_h)
        parts.append(_canon(labels, current))
    if len(current) != 1:
        raise InconsistentReplay("replay does not end with a single block")
    return validate_dendrogram(labels, bps, parts)


# -- serialization -----------------------------------------------------------

def to_json_obj(theta: Dendrogram) -> dict:
    return {
        "labels": list(theta.labels),
        "breakpoints": list(theta.breakpoints),
        "partitions": [[_sorted_block(theta.labels, b) for b in p] for p in theta.partitions],
    }


def from_json_obj(obj: dict) -> Dendrogram:
    return validate_dendrogram(obj["labels"], obj["breakpoints"], obj["partitions"])


def _sorted_block(labels, block):
    pos = {lab: i for i, lab in enumerate(labels)}
    return sorted(block, key=pos.__getitem__)


def _newick_label(x) -> str:
    s = str(x)
    if any(c in s for c in " ():;,[]'\t\n") or not s:
        return "'" + s.replace("'", "''") + "'"
    return s


def to_newick(theta: Dendrogram) -> str:
    """Newick string; multi-way merges become multifurcating nodes."""
    key = _order_key(theta.labels)
    born = {}  # block -> height at which it first appears
    for h, part in zip(theta.breakpoints, theta.partitions):
        for b in part:
            born.setdefault(b, h)
    # children of a block formed at breakpoint i are the blocks of partition i-1 inside it
    idx_of = {h: i for i, h in enumerate(theta.breakpoints)}

    def render(block, parent_h):
        h = born[block]
        if len(block) == 1:
            body = _newick_label(next(iter(block)))
        else:
            prev = theta.partitions[idx_of[h] - 1]
            kids = sorted((c for c in prev if c <= block), key=key)
            body = "(" + ",".join(render(c, h) for c in kids) + ")"
        if parent_h is None:
            return body
        return f"{body}:{_fmt(parent_h - h)}"

    root = theta.partitions[-1][0]
    return render(root, None) + ";"


def _fmt(x: float) -> str:
    return repr(float(x))


def merge_table_rows(theta: Dendrogram) -> list[dict]:
    return [
        {
            "block_a": _sorted_block(theta.labels, r.block_a),
            "block_b": _sorted_block(theta.labels, r.block_b),
            "height": r.height,
            "merged_size": r.merged_size,
        }
        for r in to_merge_table(theta)
    ]
