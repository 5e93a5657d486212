"""Linkage functions and the standard linkage-based recursion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .dendrogram import Dendrogram, from_rounds
from .errors import EmptyBlock, OverlappingBlocks
from .metric import FiniteMetricSpace, _components, canonical_partition, permute, relabel, scale

LinkageFn = Callable[[frozenset, frozenset, FiniteMetricSpace], float]


@dataclass(frozen=True)
class LinkageSpec:
    """A named block dissimilarity ``evaluate(A, B, M) -> float``."""

    name: str
    evaluate: LinkageFn

    def __call__(self, A, B, M: FiniteMetricSpace) -> float:
        return self.evaluate(A, B, M)


def cross_distances(A, B, M: FiniteMetricSpace) -> np.ndarray:
    """The ``#A x #B`` submatrix of distances, rows and columns in label order."""
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise EmptyBlock("blocks must be nonempty")
    if A & B:
        raise OverlappingBlocks(f"blocks share {sorted(map(str, A & B))}")
    return M.dist[np.ix_(M.indices(A), M.indices(B))]


def linkage_sl(A, B, M: FiniteMetricSpace) -> float:
    return float(cross_distances(A, B, M).min())


def linkage_cl(A, B, M: FiniteMetricSpace) -> float:
    return float(cross_distances(A, B, M).max())


def linkage_al(A, B, M: FiniteMetricSpace) -> float:
    C = cross_distances(A, B, M)
    # fsum is exactly rounded, hence independent of summation order
    return math.fsum(C.ravel().tolist()) / C.size


def exotic_linkage(A, B, M: FiniteMetricSpace) -> float:
    """Single linkage divided by the total number of points; not increasing."""
    return linkage_sl(A, B, M) / (len(frozenset(A)) + len(frozenset(B)))


SL = LinkageSpec("sl", linkage_sl)
CL = LinkageSpec("cl", linkage_cl)
AL = LinkageSpec("al", linkage_al)
EXOTIC = LinkageSpec("exotic", exotic_linkage)

BUILTIN_LINKAGES = {spec.name: spec for spec in (SL, CL, AL, EXOTIC)}


def get_linkage(name: str) -> LinkageSpec:
    try:
        return BUILTIN_LINKAGES[name]
    except KeyError:
        raise ValueError(f"unknown linkage {name!r}; choose from {sorted(BUILTIN_LINKAGES)}") from None


@dataclass(frozen=True)
class Round:
    """One pass of the recursion: the level used, the resulting partition and the merge-graph edges."""

    R: float
    partition: tuple
    edges: tuple
    case: str = "a"

    @property
    def merged(self) -> bool:
        return bool(self.edges)


@dataclass
class RunTrace:
    rounds: list = field(default_factory=list)

    @property
    def levels(self) -> list[float]:
        return [r.R for r in self.rounds]


def _merge(blocks: list, edges: Iterable[tuple[int, int]]) -> list:
    n = len(blocks)
    adj = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        adj[i, j] = adj[j, i] = True
    return [frozenset().union(*(blocks[i] for i in comp)) for comp in _components(adj)]


def _pairwise(blocks, linkage: LinkageSpec, M) -> dict:
    return {
        (i, j): linkage(blocks[i], blocks[j], M)
        for i in range(len(blocks))
        for j in range(i + 1, len(blocks))
    }


def run_standard(M: FiniteMetricSpace, linkage: LinkageSpec) -> tuple[Dendrogram, RunTrace]:
    """Standard linkage-based clustering.

    Each round takes R as the smallest block linkage, links every pair of
    blocks with linkage <= R and merges connected components. All ties merge
    at once; there is no pairwise order.
    """
    blocks = [frozenset([x]) for x in M.labels]
    trace = RunTrace()
    while len(blocks) > 1:
        values = _pairwise(blocks, linkage, M)
        R = min(values.values())
        edges = tuple(k for k, v in values.items() if v <= R)
        edge_blocks = tuple((blocks[i], blocks[j]) for i, j in edges)
        blocks = _merge(blocks, edges)
        trace.rounds.append(Round(R, canonical_partition(M, blocks), edge_blocks))
    theta = from_rounds(M.labels, trace.levels, [r.partition for r in trace.rounds])
    return theta, trace


def check_increasing(trace: RunTrace) -> bool:
    levels = trace.levels
    return all(b > a for a, b in zip(levels, levels[1:]))


# -- randomized axiom harness -------------------------------------------------

@dataclass
class HarnessReport:
    name: str
    trials: int
    passed: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def to_dict(self) -> dict:
        return {
            "linkage": self.name,
            "trials": self.trials,
            "passed": dict(self.passed),
            "counterexamples": self.counterexamples,
        }


def _random_blocks(rng, labels):
    n = len(labels)
    perm = rng.permutation(n)
    k = int(rng.integers(1, n))
    m = int(rng.integers(k + 1, n + 1))
    return frozenset(labels[i] for i in perm[:k]), frozenset(labels[i] for i in perm[k:m])


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


def axiom_harness(linkage: LinkageSpec, trials: int = 200, seed: int = 0, max_points: int = 8) -> HarnessReport:
    """Randomized check of representation independence, monotonicity and scale preservation.

    Monotonicity is probed with per-pair inflations of cross distances (both
    dense and sparse), keeping only inflated matrices that remain metrics.
    """
    from .stability import random_metric  # local import: stability depends on this module

    rng = np.random.default_rng(seed)
    report = HarnessReport(linkage.name, trials)
    report.passed = {"representation_independence": True, "monotonicity": True, "scale_preservation": True}
    for trial in range(trials):
        n = int(rng.integers(2, max_points + 1))
        M = random_metric(n, seed=int(rng.integers(2**31)))
        A, B = _random_blocks(rng, M.labels)
        base = linkage(A, B, M)

        # relabel + reorder points: an isometric copy of (A, B, d)
        order = rng.permutation(n)
        M2 = relabel(permute(M, order), lambda x: f"r_{x}")
        A2, B2 = frozenset(f"r_{x}" for x in A), frozenset(f"r_{x}" for x in B)
        v = linkage(A2, B2, M2)
        if not _close(v, base) and report.passed["representation_independence"]:
            report.passed["representation_independence"] = False
            report.counterexamples["representation_independence"] = {
                "trial": trial, "value": base, "relabelled_value": v,
            }

        inflated = _inflate_cross(rng, M, A, B)
        if inflated is not None:
            v = linkage(A, B, inflated)
            if v < base and not _close(v, base) and report.passed["monotonicity"]:
                report.passed["monotonicity"] = False
                report.counterexamples["monotonicity"] = {
                    "trial": trial, "value": base, "inflated_value": v,
                    "A": sorted(map(str, A)), "B": sorted(map(str, B)),
                }

        alpha = float(rng.choice([0.25, 0.5, 2.0, 3.0, rng.uniform(0.1, 10.0)]))
        v = linkage(A, B, scale(M, alpha))
        if not _close(v, alpha * base) and report.passed["scale_preservation"]:
            report.passed["scale_preservation"] = False
            report.counterexamples["scale_preservation"] = {
                "trial": trial, "alpha": alpha, "value": base, "scaled_value": v,
            }
    return report


def _inflate_cross(rng, M, A, B, attempts: int = 20):
    from .metric import build_metric
    from .errors import MetricError

    ia, ib = M.indices(A), M.indices(B)
    for _ in range(attempts):
        D = np.array(M.dist)
        bump = rng.uniform(0.0, 0.5, size=(len(ia), len(ib)))
        if rng.random() < 0.5:
            bump *= rng.random(size=bump.shape) < 0.3
        D[np.ix_(ia, ib)] += bump
        D[np.ix_(ib, ia)] += bump.T
        try:
            return build_metric(M.labels, D)
        except MetricError:
            continue
    return None
