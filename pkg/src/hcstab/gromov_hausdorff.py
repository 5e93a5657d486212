"""Correspondences, distortion and the Gromov-Hausdorff distance of small finite spaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotACorrespondence
from .metric import FiniteMetricSpace

DEFAULT_GH_BUDGET = 10**7


@dataclass(frozen=True)
class Correspondence:
    """A relation between the labels of X and Y, stored as (x, y) pairs."""

    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((x, y) for x, y in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def sorted_pairs(self, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> list:
        return sorted(self.pairs, key=lambda p: (X.index(p[0]), Y.index(p[1])))

    def inverse(self) -> "Correspondence":
        return Correspondence(frozenset((y, x) for x, y in self.pairs))


def identity_correspondence(X: FiniteMetricSpace, Y: FiniteMetricSpace | None = None) -> Correspondence:
    """Pair each label with itself (``Y`` must share X's labels), or position-wise when labels differ."""
    if Y is None or set(Y.labels) == set(X.labels):
        return Correspondence(frozenset((x, x) for x in X.labels))
    if len(X) != len(Y):
        raise NotACorrespondence("positional identity needs spaces of equal size")
    return Correspondence(frozenset(zip(X.labels, Y.labels)))


def correspondence_from_map(mapping: dict) -> Correspondence:
    """Pairs (x, mapping[x]); ``mapping`` values may be single labels or iterables of labels."""
    pairs = set()
    for x, ys in mapping.items():
        if isinstance(ys, (set, frozenset, list, tuple)):
            pairs.update((x, y) for y in ys)
        else:
            pairs.add((x, ys))
    return Correspondence(frozenset(pairs))


def _index_pairs(tau: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace):
    try:
        ix = np.array([X.index(x) for x, _ in tau.pairs], dtype=np.intp)
        iy = np.array([Y.index(y) for _, y in tau.pairs], dtype=np.intp)
    except KeyError as exc:
        raise NotACorrespondence(str(exc)) from None
    if len(set(ix.tolist())) != len(X) or len(set(iy.tolist())) != len(Y):
        raise NotACorrespondence("every point of both spaces must appear in some pair")
    return ix, iy


def distortion(tau: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Largest |d_X(x, x') - d_Y(y, y')| over pairs of pairs in ``tau``."""
    ix, iy = _index_pairs(tau, X, Y)
    diff = np.abs(X.dist[np.ix_(ix, ix)] - Y.dist[np.ix_(iy, iy)])
    return float(diff.max())


def gh_upper_from(tau: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    return distortion(tau, X, Y) / 2


def _eccentricities(D: np.ndarray) -> np.ndarray:
    return D.max(axis=1)


def _min_positive(D: np.ndarray) -> float:
    pos = D[D > 0]
    return float(pos.min()) if pos.size else 0.0


def gh_lower_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """A cheap admissible lower bound on the Gromov-Hausdorff distance.

    The maximum of three certificates, each at most half the distortion of
    any correspondence:
      * half the difference of diameters;
      * half the Hausdorff distance between the sets of eccentricities
        (a pair (x, y) has |ecc(x) - ecc(y)| <= distortion);
      * when the sizes differ, half the smallest positive distance of the
        larger space (two of its points share an image).
    """
    ex, ey = _eccentricities(X.dist), _eccentricities(Y.dist)
    bound = abs(X.diameter - Y.diameter)
    gap = np.abs(ex[:, None] - ey[None, :])
    bound = max(bound, float(gap.min(axis=1).max()), float(gap.min(axis=0).max()))
    if len(X) > len(Y):
        bound = max(bound, _min_positive(X.dist))
    elif len(Y) > len(X):
        bound = max(bound, _min_positive(Y.dist))
    return bound / 2


@dataclass(frozen=True)
class GHResult:
    """Outcome of :func:`gh_exact`.

    ``value`` is half the distortion of ``witness``. When ``exact`` is false
    the search ran out of budget and the true distance lies in
    ``[lower, upper]`` with ``upper == value``.
    """

    value: float
    witness: Correspondence
    exact: bool
    nodes: int
    lower: float
    upper: float

    def to_dict(self, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "witness": [list(p) for p in self.witness.sorted_pairs(X, Y)],
        }


class _Search:
    """Depth-first branch and bound over correspondences.

    Phase one gives every point of X an image; phase two gives every Y point
    that is still uncovered a preimage. Any correspondence contains such a
    relation with no larger distortion, so the search is complete.

    ``C[x, y]`` is the distortion that adding (x, y) would create against the
    current pairs. It only grows along a branch, so
    max(current, max_x min_y C, max_uncovered-y min_x C) never overestimates
    the best completion and is safe for pruning.
    """

    def __init__(self, DX, DY, budget, incumbent, pairs, floor):
        self.DX, self.DY = DX, DY
        self.n, self.m = DX.shape[0], DY.shape[0]
        self.budget = budget
        self.nodes = 0
        self.best = incumbent
        self.best_pairs = pairs
        self.floor = floor
        self.exhausted = False
        ecc = DX.max(axis=1)
        self.order = sorted(range(self.n), key=lambda i: (-ecc[i], i))

    def run(self):
        if self.best <= self.floor:
            return
        C = np.zeros((self.n, self.m))
        covered = np.zeros(self.m, dtype=bool)
        self._phase_x(0, 0.0, C, covered, [])

    def _done(self) -> bool:
        return self.exhausted or self.best <= self.floor

    def _tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
        return self.exhausted

    def _bound(self, cur, C, covered, depth):
        b = cur
        if depth < self.n:
            rest = self.order[depth:]
            b = max(b, float(C[rest].min(axis=1).max()))
        if not covered.all():
            b = max(b, float(C[:, ~covered].min(axis=0).max()))
        return b

    def _add(self, C, x, y):
        return np.maximum(C, np.abs(self.DX[x][:, None] - self.DY[y][None, :]))

    def _phase_x(self, depth, cur, C, covered, pairs):
        if depth == self.n:
            self._phase_y(cur, C, covered, pairs)
            return
        x = self.order[depth]
        row = C[x]
        for y in sorted(range(self.m), key=lambda j: (row[j], j)):
            if self._done():
                return
            new = max(cur, float(row[y]))
            if new >= self.best:
                break  # candidates are sorted by cost
            if self._tick():
                return
            C2 = self._add(C, x, y)
            cov2 = covered.copy()
            cov2[y] = True
            pairs.append((x, y))
            if self._bound(new, C2, cov2, depth + 1) < self.best:
                self._phase_x(depth + 1, new, C2, cov2, pairs)
            pairs.pop()

    def _phase_y(self, cur, C, covered, pairs):
        free = np.flatnonzero(~covered)
        if free.size == 0:
            if cur < self.best:
                self.best = cur
                self.best_pairs = list(pairs)
            return
        y = int(free[0])
        col = C[:, y]
        for x in sorted(range(self.n), key=lambda i: (col[i], i)):
            if self._done():
                return
            new = max(cur, float(col[x]))
            if new >= self.best:
                break
            if self._tick():
                return
            C2 = self._add(C, x, y)
            cov2 = covered.copy()
            cov2[y] = True
            pairs.append((x, y))
            if self._bound(new, C2, cov2, self.n) < self.best:
                self._phase_y(new, C2, cov2, pairs)
            pairs.pop()


def _greedy_pairs(DX, DY):
    """Match points by nearest eccentricity in both directions."""
    ex, ey = DX.max(axis=1), DY.max(axis=1)
    gap = np.abs(ex[:, None] - ey[None, :])
    pairs = {(i, int(np.argmin(gap[i]))) for i in range(DX.shape[0])}
    pairs |= {(int(np.argmin(gap[:, j])), j) for j in range(DY.shape[0])}
    return sorted(pairs)


def _pairs_distortion(DX, DY, pairs) -> float:
    ix = np.array([p[0] for p in pairs], dtype=np.intp)
    iy = np.array([p[1] for p in pairs], dtype=np.intp)
    return float(np.abs(DX[np.ix_(ix, ix)] - DY[np.ix_(iy, iy)]).max())


def gh_greedy_upper(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Upper bound from the eccentricity-matching correspondence (no search)."""
    return _pairs_distortion(X.dist, Y.dist, _greedy_pairs(X.dist, Y.dist)) / 2


def gh_exact(
    X: FiniteMetricSpace,
    Y: FiniteMetricSpace,
    budget: int = DEFAULT_GH_BUDGET,
    hint: Correspondence | None = None,
) -> GHResult:
    """Gromov-Hausdorff distance by branch and bound.

    Exhausting ``budget`` search nodes is not an error: the result is then
    flagged inexact and bracketed by the lower bound and the best
    correspondence found. ``hint`` seeds the incumbent; a good one (say the
    identity between a space and its perturbation) shortens the search.
    """
    if len(X) == len(Y) and np.array_equal(X.dist, Y.dist):
        tau = Correspondence(frozenset(zip(X.labels, Y.labels)))
        return GHResult(0.0, tau, True, 0, 0.0, 0.0)

    # branch on the larger space so phase two is usually short
    swap = len(Y) > len(X)
    A, B = (Y, X) if swap else (X, Y)
    DA, DB = A.dist, B.dist
    lower = gh_lower_bound(A, B)
    pairs = _greedy_pairs(DA, DB)
    incumbent = _pairs_distortion(DA, DB, pairs)
    if hint is not None:
        ix, iy = _index_pairs(hint, X, Y)
        hinted = sorted(zip(iy.tolist(), ix.tolist())) if swap else sorted(zip(ix.tolist(), iy.tolist()))
        d = _pairs_distortion(DA, DB, hinted)
        if d < incumbent:
            pairs, incumbent = hinted, d
    search = _Search(DA, DB, budget, incumbent, pairs, 2 * lower)
    search.run()

    best_pairs = search.best_pairs
    if swap:
        tau = Correspondence(frozenset((X.labels[j], Y.labels[i]) for i, j in best_pairs))
    else:
        tau = Correspondence(frozenset((X.labels[i], Y.labels[j]) for i, j in best_pairs))
    value = search.best / 2
    if search.exhausted:
        return GHResult(value, tau, False, search.nodes, min(lower, value), value)
    return GHResult(value, tau, True, search.nodes, value, value)


def all_correspondences(n: int, m: int):
    """Yield every correspondence between ``range(n)`` and ``range(m)`` as a list of index pairs.

    Exhaustive (2**(n*m) relations); intended as a test oracle for tiny spaces.
    """
    cells = [(i, j) for i in range(n) for j in range(m)]
    for mask in range(1, 1 << len(cells)):
        rel = [cells[k] for k in range(len(cells)) if mask >> k & 1]
        if len({i for i, _ in rel}) == n and len({j for _, j in rel}) == m:
            yield rel


def gh_enumerate(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """GH distance by checking every correspondence; exponential, for |X|*|Y| <= 16 or so."""
    best = min(_pairs_distortion(X.dist, Y.dist, rel) for rel in all_correspondences(len(X), len(Y)))
    return best / 2
