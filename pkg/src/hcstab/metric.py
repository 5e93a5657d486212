"""Finite metric spaces, ultrametrics, partitions and the named space families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricMatrix,
    DuplicateLabel,
    DuplicatePoint,
    EmptyInput,
    EmptySubset,
    NegativeDistance,
    NonFiniteDistance,
    NonpositiveScale,
    NonzeroDiagonal,
    NotUltrametric,
    ShapeMismatch,
    TriangleViolation,
    UnknownLabel,
)

Label = Hashable
Block = frozenset
Partition = tuple  # tuple[frozenset, ...], blocks ordered by smallest member index


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labelled points with a validated, read-only distance matrix.

    Build instances through :func:`build_metric`; the constructor itself does
    no validation.
    """

    labels: tuple
    dist: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    __hash__ = None

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}") from None

    def indices(self, labels: Iterable) -> np.ndarray:
        return np.array(sorted(self.index(lab) for lab in labels), dtype=np.intp)

    def d(self, a, b) -> float:
        return float(self.dist[self.index(a), self.index(b)])

    def block(self, labels: Iterable) -> frozenset:
        """Normalize an iterable of labels into a block, checking membership."""
        out = frozenset(labels)
        for lab in out:
            self.index(lab)
        return out

    @cached_property
    def distances(self) -> tuple:
        """Sorted distinct pairwise distances, starting with 0."""
        return tuple(float(v) for v in np.unique(np.concatenate(([0.0], self.dist.ravel()))))

    @property
    def diameter(self) -> float:
        return float(self.dist.max()) if len(self) > 1 else 0.0

    def is_ultrametric(self, tol: float = 0.0) -> bool:
        return is_ultrametric(self, tol)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self)}, labels={list(self.labels)!r})"


class Ultrametric(FiniteMetricSpace):
    """A finite metric space satisfying the strong triangle inequality."""


def _frozen(matrix: np.ndarray) -> np.ndarray:
    arr = np.array(matrix, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


def _first_triangle_violation(D: np.ndarray, tol: float):
    # excess[i, j, k] = D[i, k] - D[i, j] - D[j, k]
    excess = D[:, None, :] - D[:, :, None] - D[None, :, :]
    bad = np.argwhere(excess > tol)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        return i, j, k
    return None


def build_metric(
    labels: Sequence,
    matrix,
    *,
    tol: float = 0.0,
    allow_pseudometric: bool = False,
) -> FiniteMetricSpace:
    """Validate ``matrix`` as a metric on ``labels`` and return the space.

    With ``allow_pseudometric`` set, points at distance zero from an earlier
    point are dropped (the earlier one is kept as representative). ``tol``
    relaxes the symmetry and triangle checks for noisy user data.
    """
    labels = tuple(labels)
    D = np.asarray(matrix, dtype=np.float64)
    n = len(labels)
    if n == 0:
        raise EmptyInput("a metric space needs at least one point")
    if D.ndim != 2 or D.shape != (n, n):
        raise ShapeMismatch(f"expected a {n}x{n} matrix, got shape {D.shape}")
    if len(set(labels)) != n:
        raise DuplicateLabel("labels must be unique")
    if not np.all(np.isfinite(D)):
        raise NonFiniteDistance("distances must be finite")
    if np.any(np.diag(D) != 0):
        i = int(np.flatnonzero(np.diag(D) != 0)[0])
        raise NonzeroDiagonal(f"d({labels[i]!r},{labels[i]!r}) = {D[i, i]!r}")
    if np.any(D < 0):
        i, j = (int(v) for v in np.argwhere(D < 0)[0])
        raise NegativeDistance(f"d({labels[i]!r},{labels[j]!r}) = {D[i, j]!r}")
    asym = np.abs(D - D.T) > tol
    if np.any(asym):
        i, j = (int(v) for v in np.argwhere(asym)[0])
        raise AsymmetricMatrix(f"d({labels[i]!r},{labels[j]!r}) != d({labels[j]!r},{labels[i]!r})")
    if tol > 0:
        D = (D + D.T) / 2

    off = ~np.eye(n, dtype=bool)
    zeros = np.argwhere((D <= tol) & off)
    if len(zeros):
        if not allow_pseudometric:
            i, j = (int(v) for v in zeros[0])
            raise DuplicatePoint(labels[i], labels[j])
        labels, D = _collapse(labels, D, tol)
        n = len(labels)

    bad = _first_triangle_violation(D, tol)
    if bad is not None:
        i, j, k = bad
        raise TriangleViolation(labels[i], labels[j], labels[k])
    return FiniteMetricSpace(labels, _frozen(D))


def _collapse(labels, D, tol):
    keep = []
    for i in range(len(labels)):
        if not any(D[i, r] <= tol for r in keep):
            keep.append(i)
    keep = np.array(keep, dtype=np.intp)
    return tuple(labels[i] for i in keep), D[np.ix_(keep, keep)]


def collapse_duplicates(labels: Sequence, matrix, tol: float = 0.0) -> tuple[FiniteMetricSpace, dict]:
    """Collapse zero-distance duplicates; return the space and a label -> representative map."""
    labels = tuple(labels)
    D = np.asarray(matrix, dtype=np.float64)
    space = build_metric(labels, D, tol=tol, allow_pseudometric=True)
    rep = {}
    kept = [labels.index(lab) for lab in space.labels]
    for i, lab in enumerate(labels):
        rep[lab] = next(labels[r] for r in kept if r == i or D[i, r] <= tol)
    return space, rep


def is_ultrametric(M: FiniteMetricSpace, tol: float = 0.0) -> bool:
    D = M.dist
    # strong triangle: D[i, k] <= max(D[i, j], D[j, k])
    bound = np.maximum(D[:, :, None], D[None, :, :])
    return bool(np.all(D[:, None, :] <= bound + tol))


def as_ultrametric(M: FiniteMetricSpace, tol: float = 0.0) -> Ultrametric:
    if isinstance(M, Ultrametric):
        return M
    if not is_ultrametric(M, tol):
        raise NotUltrametric("strong triangle inequality fails")
    return Ultrametric(M.labels, M.dist)


def distance_set(M: FiniteMetricSpace) -> tuple[float, ...]:
    """Sorted distinct pairwise distances, starting with 0."""
    return M.distances


def interval_space(*gaps: float, prefix: str = "p") -> FiniteMetricSpace:
    """Points ``p0..pn`` on a line with consecutive gaps ``gaps``.

    ``d(p_i, p_j)`` is the correctly rounded sum of the gaps between them, so
    it is exact whenever that sum is representable. Rounding can break the
    additive triangle equalities by an ulp, so validation allows that much.
    """
    if not gaps:
        raise EmptyInput("need at least one gap")
    if any(not (a > 0) for a in gaps):
        raise NonpositiveScale("interval gaps must be positive")
    n = len(gaps) + 1
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = math.fsum(gaps[i:j])
    return build_metric([f"{prefix}{i}" for i in range(n)], D, tol=4 * np.spacing(D.max()))


def scale(M: FiniteMetricSpace, alpha: float) -> FiniteMetricSpace:
    if not alpha > 0:
        raise NonpositiveScale(f"scale factor must be positive, got {alpha!r}")
    cls = type(M)
    return cls(M.labels, _frozen(M.dist * alpha))


def _components(adj: np.ndarray) -> list[list[int]]:
    """Connected components of a boolean adjacency matrix, in index order."""
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.flatnonzero(adj[v] & ~seen):
                seen[w] = True
                stack.append(int(w))
        comps.append(sorted(comp))
    return comps


def canonical_partition(M: FiniteMetricSpace, blocks: Iterable[Iterable]) -> Partition:
    """Blocks as frozensets, ordered by their smallest member index."""
    fs = [frozenset(b) for b in blocks]
    return tuple(sorted(fs, key=lambda b: min(M.index(x) for x in b)))


def t_components(M: FiniteMetricSpace, t: float) -> Partition:
    """Partition into maximal t-connected subsets (chains with steps <= t)."""
    comps = _components(M.dist <= t)
    return tuple(frozenset(M.labels[i] for i in c) for c in comps)


def restrict(M: FiniteMetricSpace, subset: Iterable) -> FiniteMetricSpace:
    subset = list(subset)
    if not subset:
        raise EmptySubset("cannot restrict to an empty subset")
    idx = M.indices(subset)
    cls = type(M)
    return cls(tuple(M.labels[i] for i in idx), _frozen(M.dist[np.ix_(idx, idx)]))


def relabel(M: FiniteMetricSpace, mapping) -> FiniteMetricSpace:
    """Rename points; ``mapping`` is a dict or a callable."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return type(M)(tuple(f(x) for x in M.labels), M.dist)


def permute(M: FiniteMetricSpace, order: Sequence[int]) -> FiniteMetricSpace:
    """Same space with points reordered so that new position ``i`` holds old point ``order[i]``."""
    order = np.asarray(order, dtype=np.intp)
    return type(M)(tuple(M.labels[i] for i in order), _frozen(M.dist[np.ix_(order, order)]))
