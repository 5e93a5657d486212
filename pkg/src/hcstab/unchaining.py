"""Almost-standard linkage-based clustering with unchaining conditions, and SL(alpha)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cliques import DEFAULT_NODE_BUDGET, adjacency_bits, max_clique_size, max_cross_clique_size
from .dendrogram import Dendrogram, from_rounds
from .errors import AlphaTooSmall, EmptyBlock, NoProgress, NoThresholdFound, OverlappingBlocks
from .linkage import SL, LinkageSpec, Round, RunTrace, _merge, _pairwise, linkage_sl
from .metric import FiniteMetricSpace, canonical_partition, distance_set


@dataclass(frozen=True)
class UnchainingSpec:
    """A threshold predicate on block pairs.

    ``satisfied(A, B, R, M)`` says whether the pair may merge at level R;
    ``candidate_thresholds(A, B, M)`` lists, in increasing order, the levels
    at which the predicate can change value.
    """

    name: str
    satisfied: Callable[[frozenset, frozenset, float, FiniteMetricSpace], bool]
    candidate_thresholds: Callable[[frozenset, frozenset, FiniteMetricSpace], tuple]


def _positive_distances(A, B, M):
    return distance_set(M)[1:]


def always() -> UnchainingSpec:
    """The empty condition: every pair qualifies at every level."""
    return UnchainingSpec("always", lambda A, B, R, M: True, _positive_distances)


def rips_block_dim(B, t: float, M: FiniteMetricSpace, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Dimension of the Rips complex of ``B`` at scale ``t`` (largest clique size minus one)."""
    B = frozenset(B)
    if not B:
        raise EmptyBlock("block must be nonempty")
    idx = M.indices(B)
    adj = M.dist[np.ix_(idx, idx)] <= t
    if adj.all():
        return len(idx) - 1
    return max_clique_size(adjacency_bits(adj), budget=budget) - 1


def cross_simplex_max_dim(B1, B2, t: float, M: FiniteMetricSpace, budget: int = DEFAULT_NODE_BUDGET):
    """Largest dimension of a Rips simplex on ``B1 | B2`` at scale ``t`` meeting both blocks.

    Returns ``None`` when no cross distance is ``<= t``.
    """
    B1, B2 = frozenset(B1), frozenset(B2)
    if not B1 or not B2:
        raise EmptyBlock("blocks must be nonempty")
    if B1 & B2:
        raise OverlappingBlocks("blocks must be disjoint")
    i1, i2 = M.indices(B1), M.indices(B2)
    idx = np.concatenate([i1, i2])
    adj = M.dist[np.ix_(idx, idx)] <= t
    cross = adj[: len(i1), len(i1):]
    if not cross.any():
        return None
    if adj.all():
        return len(idx) - 1
    left = (1 << len(i1)) - 1
    right = ((1 << len(idx)) - 1) & ~left
    return max_cross_clique_size(adjacency_bits(adj), left, right, budget) - 1


def p_alpha(alpha: float, budget: int = DEFAULT_NODE_BUDGET) -> UnchainingSpec:
    """The SL(alpha) condition: some cross simplex has alpha * dim >= the smaller block dimension."""
    if not alpha >= 1:
        raise AlphaTooSmall(f"alpha must be >= 1, got {alpha!r}")

    def satisfied(A, B, R, M):
        cross = cross_simplex_max_dim(A, B, R, M, budget)
        if cross is None:
            return False
        return alpha * cross >= min(rips_block_dim(A, R, M, budget), rips_block_dim(B, R, M, budget))

    return UnchainingSpec(f"p-alpha:{alpha:g}", satisfied, _positive_distances)


def parse_condition(text: str) -> UnchainingSpec:
    """Parse CLI condition specs: ``always`` or ``p-alpha:<alpha>``."""
    if text == "always":
        return always()
    if text.startswith("p-alpha:"):
        return p_alpha(float(text.split(":", 1)[1]))
    raise ValueError(f"unknown condition {text!r}; use 'always' or 'p-alpha:<alpha>'")


def unchaining_threshold(P: UnchainingSpec, B1, B2, M: FiniteMetricSpace) -> float:
    """Smallest candidate level at which the pair satisfies ``P``."""
    B1, B2 = frozenset(B1), frozenset(B2)
    if not B1 or not B2:
        raise EmptyBlock("blocks must be nonempty")
    if B1 & B2:
        raise OverlappingBlocks("blocks must be disjoint")
    for R in P.candidate_thresholds(B1, B2, M):
        if P.satisfied(B1, B2, R, M):
            return float(R)
    raise NoThresholdFound(f"{P.name} is never satisfied on its candidate levels")


SCHEDULES = ("monotone", "literal")


def run_almost_standard(
    M: FiniteMetricSpace, linkage: LinkageSpec, P: UnchainingSpec, schedule: str = "monotone"
) -> tuple[Dendrogram, RunTrace]:
    """Almost-standard clustering T(linkage; P).

    Levels are chosen by three cases:
      a) after a merge, the smallest block linkage;
      b) after a stalled round, the next linkage value above the last level;
      c) if no larger linkage exists, the smallest candidate level of P above
         the last level at which some pair qualifies.
    An edge needs linkage <= R and P satisfied at R; linked components merge.

    ``schedule="literal"`` applies the three cases verbatim. With the default
    ``"monotone"`` schedule, once P has vetoed an edge the level only moves
    upward, to the next value among current linkages and P's candidate
    levels. Before any veto both schedules coincide, so an always-true P
    reproduces :func:`~hcstab.linkage.run_standard` for every linkage. The
    literal schedule can revisit a lower level after a veto, which re-dates
    later merges in the resulting dendrogram.
    """
    if schedule not in SCHEDULES:
        raise ValueError(f"schedule must be one of {SCHEDULES}")
    blocks = [frozenset([x]) for x in M.labels]
    trace = RunTrace()
    changed, vetoed, R_prev = True, False, 0.0
    while len(blocks) > 1:
        values = _pairwise(blocks, linkage, M)
        if schedule == "monotone" and vetoed:
            case, R = _next_level(blocks, values, P, M, R_prev)
        elif changed:
            case, R = "a", min(values.values())
        else:
            larger = [v for v in values.values() if v > R_prev]
            if larger:
                case, R = "b", min(larger)
            else:
                case, R = "c", _step_c(blocks, values, P, M, R_prev)
        edges = []
        for (i, j), v in values.items():
            if v <= R:
                if P.satisfied(blocks[i], blocks[j], R, M):
                    edges.append((i, j))
                else:
                    vetoed = True
        edge_blocks = tuple((blocks[i], blocks[j]) for i, j in edges)
        if edges:
            blocks = _merge(blocks, edges)
        changed = bool(edges)
        R_prev = R
        trace.rounds.append(Round(R, canonical_partition(M, blocks), edge_blocks, case))
    theta = from_rounds(M.labels, trace.levels, [r.partition for r in trace.rounds])
    return theta, trace


def _next_level(blocks, values, P, M, R_prev):
    larger = [v for v in values.values() if v > R_prev]
    best_l = min(larger) if larger else None
    best_c = None
    for i, j in values:
        for c in P.candidate_thresholds(blocks[i], blocks[j], M):
            if c > R_prev:
                if best_c is None or c < best_c:
                    best_c = c
                break
    if best_l is None and best_c is None:
        raise NoProgress(f"no linkage value or {P.name} candidate level above {R_prev}")
    if best_c is None or (best_l is not None and best_l <= best_c):
        return "b", float(best_l)
    return "c", float(best_c)


def _step_c(blocks, values, P, M, R_prev):
    best = None
    for (i, j), v in values.items():
        for c in P.candidate_thresholds(blocks[i], blocks[j], M):
            if c <= R_prev or c < v:
                continue
            if best is not None and c >= best:
                break
            if P.satisfied(blocks[i], blocks[j], c, M):
                best = c
                break
    if best is None:
        raise NoProgress(f"{P.name} has no candidate level above {R_prev} where a pair qualifies")
    return float(best)


def sl_alpha(M: FiniteMetricSpace, alpha: float, budget: int = DEFAULT_NODE_BUDGET) -> tuple[Dendrogram, RunTrace]:
    """SL(alpha) by sweeping R over the sorted distance set, one merge round per level."""
    P = p_alpha(alpha, budget)
    blocks = [frozenset([x]) for x in M.labels]
    trace = RunTrace()
    for R in distance_set(M)[1:]:
        if len(blocks) == 1:
            break
        edges = []
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if linkage_sl(blocks[i], blocks[j], M) <= R and P.satisfied(blocks[i], blocks[j], R, M):
                    edges.append((i, j))
        edge_blocks = tuple((blocks[i], blocks[j]) for i, j in edges)
        if edges:
            blocks = _merge(blocks, edges)
        trace.rounds.append(Round(R, canonical_partition(M, blocks), edge_blocks, "ordered"))
    theta = from_rounds(M.labels, trace.levels, [r.partition for r in trace.rounds])
    return theta, trace
