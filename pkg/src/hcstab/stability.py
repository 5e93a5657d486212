"""Constructions and experiments around GH stability of clustering methods.

Path families deform a space while holding one cross distance fixed; the
scan and probe functions run a method along them and certify GH gaps between
the outputs. Path distances are computed in exact rational arithmetic and
rounded once, so order relations such as "no cross distance between R and
R + delta" survive the conversion to floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dendrogram import eta, validate_dendrogram
from .errors import (
    BridgeNotUnique,
    EmptySubset,
    LevelTooLarge,
    MetricError,
    MetricViolation,
    NoBehaviorFlip,
    NotTComponents,
    TrivialPartition,
    TriangleViolation,
)
from .gromov_hausdorff import (
    DEFAULT_GH_BUDGET,
    Correspondence,
    correspondence_from_map,
    gh_exact,
    gh_lower_bound,
    gh_upper_from,
    identity_correspondence,
)
from .linkage import SL, LinkageSpec, run_standard
from .metric import (
    FiniteMetricSpace,
    Ultrametric,
    _first_triangle_violation,
    _frozen,
    as_ultrametric,
    build_metric,
    distance_set,
    interval_space,
    t_components,
)

PATH_KINDS = ("gamma", "bridge-single", "bridge-double")

# rounding each entry once can break an exact triangle equality by a few ulps
_TRIANGLE_SLACK = 1e-12


# -- random spaces -----------------------------------------------------------

_GRID = 2**20


def random_metric(n: int, seed: int = 0) -> FiniteMetricSpace:
    """``n`` distinct points of a dyadic grid in the unit square under the L1 norm.

    Grid coordinates keep every distance exactly representable.
    """
    if n < 1:
        raise EmptySubset("need at least one point")
    rng = np.random.default_rng(seed)
    while True:
        P = rng.integers(0, _GRID + 1, size=(n, 2))
        if len({tuple(p) for p in P.tolist()}) == n:
            break
    D = np.abs(P[:, None, :] - P[None, :, :]).sum(axis=-1) / _GRID
    return build_metric([f"x{i}" for i in range(n)], D)


def random_ultrametric(n: int, depth: int = 3, seed: int = 0) -> Ultrametric:
    """Ultrametric of a random dendrogram with at most ``depth`` merge levels.

    Heights are multiples of 1/4 at least 1/4 apart. Each level merges random
    groups of the current blocks; the last level merges everything.
    """
    if n < 1:
        raise EmptySubset("need at least one point")
    labels = [f"u{i}" for i in range(n)]
    if n == 1:
        return Ultrametric(tuple(labels), _frozen(np.zeros((1, 1))))
    rng = np.random.default_rng(seed)
    heights = np.cumsum(rng.integers(1, 5, size=max(1, depth))) / 4
    blocks = [frozenset([x]) for x in labels]
    bps, parts = [0.0], [tuple(blocks)]
    for level, h in enumerate(heights):
        if len(blocks) == 1:
            break
        if level == len(heights) - 1:
            blocks = [frozenset(labels)]
        else:
            k = int(rng.integers(1, len(blocks)))  # number of groups after merging
            tags = rng.integers(0, k, size=len(blocks))
            groups = {}
            for b, tag in zip(blocks, tags.tolist()):
                groups.setdefault(tag, []).append(b)
            blocks = [frozenset().union(*g) for g in groups.values()]
        bps.append(float(h))
        parts.append(tuple(blocks))
    return eta(validate_dendrogram(labels, bps, parts))


# -- paths -------------------------------------------------------------------

@dataclass(frozen=True)
class PathSpec:
    """A one-parameter deformation of ``base`` that separates blocks B1 and B2.

    For bridge kinds, ``bridge = (b1, b2)`` is the unique closest cross pair,
    at distance ``R``, and ``delta`` is the smallest gap of the base's
    distance set. B1 always has at least two points.
    """

    kind: str
    base: FiniteMetricSpace
    blocks: tuple
    R: float
    bridge: tuple | None = None
    delta: float | None = None

    @property
    def slope(self) -> float:
        """Continuity constant: diam + R + 2 delta."""
        return self.base.diameter + self.R + 2 * (self.delta or 0.0)


def _check_blocks(M: FiniteMetricSpace, B1, B2):
    B1, B2 = M.block(B1), M.block(B2)
    if not B1 or not B2:
        raise TrivialPartition("both blocks must be nonempty")
    if B1 & B2 or (B1 | B2) != frozenset(M.labels):
        raise TrivialPartition("blocks must partition the space")
    return B1, B2


def min_distance_gap(M: FiniteMetricSpace) -> float:
    """Smallest difference between consecutive values of the distance set (0 included)."""
    ds = distance_set(M)
    return min(b - a for a, b in zip(ds, ds[1:])) if len(ds) > 1 else 0.0


def gamma_spec(base: FiniteMetricSpace, B1, B2, R: float) -> PathSpec:
    B1, B2 = _check_blocks(base, B1, B2)
    if not R > 0:
        raise ValueError("R must be positive")
    return PathSpec("gamma", base, (B1, B2), float(R))


def _closest_cross(M, B1, B2):
    i1, i2 = M.indices(B1), M.indices(B2)
    C = M.dist[np.ix_(i1, i2)]
    R = float(C.min())
    hits = np.argwhere(C == R)
    return [(M.labels[i1[a]], M.labels[i2[b]]) for a, b in hits], R


def bridge_spec(base: FiniteMetricSpace, B1, B2, bridge=None, delta: float | None = None) -> PathSpec:
    """Bridge path spec; blocks are swapped if needed so that B1 has two or more points."""
    B1, B2 = _check_blocks(base, B1, B2)
    if len(B1) == 1 and len(B2) == 1:
        raise TrivialPartition("a bridge path needs a block with at least two points")
    hits, R = _closest_cross(base, B1, B2)
    if len(hits) != 1:
        raise BridgeNotUnique(f"{len(hits)} cross pairs realize the minimum {R!r}")
    if bridge is not None:
        b1, b2 = bridge
        if (b1, b2) not in hits and (b2, b1) not in hits:
            raise BridgeNotUnique(f"{bridge!r} is not the closest cross pair")
    b1, b2 = hits[0]
    if len(B1) == 1:
        B1, B2, b1, b2 = B2, B1, b2, b1
    if delta is None:
        delta = min_distance_gap(base)
    kind = "bridge-single" if len(B2) == 1 else "bridge-double"
    return PathSpec(kind, base, (B1, B2), R, (b1, b2), float(delta))


def _targets(spec: PathSpec) -> list:
    """Fraction matrix of the values each distance tends to as t -> 1."""
    M = spec.base
    B1, _ = spec.blocks
    R, delta = Fraction(spec.R), Fraction(spec.delta or 0.0)
    bridge = set(spec.bridge or ())
    n = len(M)
    side = [M.labels[i] in B1 for i in range(n)]
    T = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x, y = M.labels[i], M.labels[j]
            if spec.kind == "gamma":
                c = R if side[i] != side[j] else Fraction(0)
            else:
                on_bridge = (x in bridge) + (y in bridge)
                if side[i] == side[j]:
                    c = delta if on_bridge else Fraction(0)
                elif on_bridge == 2:
                    c = R
                else:
                    c = R + (2 - on_bridge) * delta
            T[i][j] = T[j][i] = c
    return T


def _path_matrix(spec: PathSpec, t: float) -> np.ndarray:
    T = Fraction(t)
    D0 = spec.base.dist
    targets = _targets(spec)
    n = len(spec.base)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = float((1 - T) * Fraction(D0[i, j]) + T * targets[i][j])
    return D


def _as_path_space(labels, D) -> FiniteMetricSpace:
    try:
        return build_metric(labels, D)
    except TriangleViolation:
        slack = _TRIANGLE_SLACK * max(1.0, float(D.max()))
        if _first_triangle_violation(D, slack) is None:
            return FiniteMetricSpace(tuple(labels), _frozen(D))
        raise MetricViolation("path produced a non-metric") from None
    except MetricError as exc:
        raise MetricViolation(f"path produced a non-metric: {exc}") from None


def endpoint(spec: PathSpec) -> FiniteMetricSpace:
    """The space at t = 1: I(R), I(delta, R) or I(delta, R, delta) on labels p0, p1, ..."""
    if spec.kind == "gamma":
        return interval_space(spec.R)
    if spec.kind == "bridge-single":
        return interval_space(spec.delta, spec.R)
    return interval_space(spec.delta, spec.R, spec.delta)


def collapse_map(spec: PathSpec) -> dict:
    """Base label -> endpoint label, the correspondence used near t = 1."""
    B1, B2 = spec.blocks
    if spec.kind == "gamma":
        return {x: ("p0" if x in B1 else "p1") for x in spec.base.labels}
    b1, b2 = spec.bridge
    out = {}
    for x in spec.base.labels:
        if x == b1:
            out[x] = "p1"
        elif x == b2:
            out[x] = "p2"
        elif x in B1:
            out[x] = "p0"
        else:
            out[x] = "p3"
    return out


def _point(spec: PathSpec, t: float) -> FiniteMetricSpace:
    if not 0.0 <= t <= 1.0:
        raise ValueError("path parameter must lie in [0, 1]")
    if t == 1.0:
        return endpoint(spec)
    if t == 0.0:
        return spec.base
    return _as_path_space(spec.base.labels, _path_matrix(spec, t))


def gamma_path(spec: PathSpec, t: float) -> FiniteMetricSpace:
    """Shrink both blocks by (1 - t) and pull every cross distance linearly toward R."""
    if spec.kind != "gamma":
        raise ValueError(f"expected a gamma spec, got {spec.kind!r}")
    return _point(spec, t)


def bridge_path(spec: PathSpec, t: float) -> FiniteMetricSpace:
    """Deform toward I(delta, R) or I(delta, R, delta) with the bridge pair held at R."""
    if spec.kind not in ("bridge-single", "bridge-double"):
        raise ValueError(f"expected a bridge spec, got {spec.kind!r}")
    return _point(spec, t)


def path_point(spec: PathSpec, t: float) -> FiniteMetricSpace:
    return _point(spec, t)


def cross_gap_violations(spec: PathSpec, t: float) -> list:
    """Cross pairs whose distance at ``t`` lies strictly between R and R + delta."""
    M = path_point(spec, t) if t < 1 else None
    if M is None:
        return []
    B1, B2 = spec.blocks
    hi = float(Fraction(spec.R) + Fraction(spec.delta or 0.0))
    return [
        (x, y, M.d(x, y))
        for x in sorted(B1, key=M.index)
        for y in sorted(B2, key=M.index)
        if spec.R < M.d(x, y) < hi
    ]


def _gap_correspondence(spec: PathSpec, s1: float, s2: float, X1, X2) -> Correspondence:
    if s1 < 1.0 and s2 < 1.0:
        return identity_correspondence(X1, X2)
    cmap = collapse_map(spec)
    if s1 == 1.0 and s2 == 1.0:
        return identity_correspondence(X1, X2)
    if s2 == 1.0:
        return correspondence_from_map(cmap)
    return correspondence_from_map(cmap).inverse()


@dataclass
class ContinuityReport:
    steps: list = field(default_factory=list)  # (s1, s2, gap, bound)

    @property
    def ok(self) -> bool:
        return all(gap <= bound for _, _, gap, bound in self.steps)


def path_continuity_check(spec: PathSpec, grid: int = 100) -> ContinuityReport:
    """GH gaps of consecutive grid points against (s2 - s1)(diam + R + 2 delta)/2.

    The bound carries a 1e-12 relative allowance for rounding of the path
    entries.
    """
    if grid < 2:
        raise ValueError("grid needs at least the two endpoints")
    ts = [i / (grid - 1) for i in range(grid)]
    report = ContinuityReport()
    prev_t, prev = ts[0], path_point(spec, ts[0])
    for t in ts[1:]:
        cur = path_point(spec, t)
        gap = gh_upper_from(_gap_correspondence(spec, prev_t, t, prev, cur), prev, cur)
        bound = (t - prev_t) * spec.slope / 2
        report.steps.append((prev_t, t, gap, bound * (1 + _TRIANGLE_SLACK)))
        prev_t, prev = t, cur
    return report


@dataclass
class GammaRegularityReport:
    linkage: str
    R: float
    samples: list = field(default_factory=list)  # (t, value)
    constant: bool = True
    equals_R: bool = True

    @property
    def regular(self) -> bool:
        return self.constant and self.equals_R


def gamma_regularity_check(linkage: LinkageSpec, spec: PathSpec, samples: int = 50) -> GammaRegularityReport:
    """Evaluate the linkage of B1, B2 along the path at t = i / samples.

    Reports separately whether the values are constant and whether they equal
    R, both up to a relative 1e-12.
    """
    if spec.kind != "gamma":
        raise ValueError("gamma_regularity_check needs a gamma spec")
    B1, B2 = spec.blocks
    report = GammaRegularityReport(linkage.name, spec.R)
    for i in range(samples):
        t = i / samples
        report.samples.append((t, linkage(B1, B2, gamma_path(spec, t))))
    first = report.samples[0][1]
    close = lambda a, b: math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15)
    report.constant = all(close(v, first) for _, v in report.samples)
    report.equals_R = all(close(v, spec.R) for _, v in report.samples)
    return report


# -- bridge constructions ----------------------------------------------------

def bridged_by_single_edge(M: FiniteMetricSpace, t: float, B1, B2):
    """``(b1, b2, R)`` when B1, B2 are t-components joined by one closest pair, else None."""
    B1, B2 = M.block(B1), M.block(B2)
    comps = set(t_components(M, t))
    if B1 not in comps or B2 not in comps:
        raise NotTComponents("both blocks must be t-components of the space")
    hits, R = _closest_cross(M, B1, B2)
    if len(hits) != 1:
        return None
    b1, b2 = hits[0]
    return b1, b2, R


def prop_bridge_space(alpha: int, gap: float = 0.5):
    """Two unit simplices of alpha + 2 points, joined at distance 2 by x0-y0 and at 2 + gap elsewhere.

    Returns ``(M, B1, B2)``.
    """
    if int(alpha) != alpha or alpha < 1:
        raise ValueError("alpha must be an integer >= 1")
    if not gap > 0:
        raise ValueError("gap must be positive")
    k = int(alpha) + 2
    xs = [f"x{i}" for i in range(k)]
    ys = [f"y{i}" for i in range(k)]
    D = np.ones((2 * k, 2 * k))
    D[:k, k:] = D[k:, :k] = 2 + gap
    D[0, k] = D[k, 0] = 2.0
    np.fill_diagonal(D, 0.0)
    M = build_metric(xs + ys, D)
    return M, frozenset(xs), frozenset(ys)


# -- complete-linkage counterexample ----------------------------------------

def cl_counterexample(k: int):
    """The family (X_k, U_k) with GH(X_k, U_k) <= 1/(k+1) and a CL output that stays far from U_k.

    Returns ``(X_k, U_k, tau)`` where ``tau`` pairs a_i with ua_i and b_i with ub_i.
    """
    if int(k) != k or k < 0:
        raise ValueError("k must be a nonnegative integer")
    k = int(k)
    delta = Fraction(1, k + 1)
    eps = delta / 2
    idx = list(range(-2, k + 1))

    def same(i, j):
        lo, hi = sorted((i, j))
        if hi <= -1:
            return Fraction(1, 2)
        if hi == 0:
            return Fraction(1)
        return 1 + hi * eps

    def cross_x(i, j):
        m = max(i, j)
        if m >= 1:
            return 1 + m * eps + delta
        if m == 0:
            return 1 + delta
        if i == j == -2:
            return Fraction(1)
        if i == j == -1:
            return 1 + delta
        return 1 + eps

    def cross_u(i, j):
        m = max(i, j)
        return 1 + m * eps if m >= 1 else Fraction(1)

    pts = [("a", i) for i in idx] + [("b", i) for i in idx]

    def matrix(cross):
        n = len(pts)
        D = np.zeros((n, n))
        for p in range(n):
            for q in range(p + 1, n):
                (s, i), (r, j) = pts[p], pts[q]
                v = same(i, j) if s == r else cross(i, j)
                D[p, q] = D[q, p] = float(v)
        return D

    try:
        X = build_metric([f"{s}_{i}" for s, i in pts], matrix(cross_x))
        U = build_metric([f"u{s}_{i}" for s, i in pts], matrix(cross_u))
    except MetricError as exc:
        raise MetricViolation(f"counterexample k={k} is not a metric: {exc}") from None
    try:
        U = as_ultrametric(U)
    except MetricError as exc:
        raise MetricViolation(f"U_{k} is not an ultrametric") from exc
    tau = Correspondence(frozenset((f"{s}_{i}", f"u{s}_{i}") for s, i in pts))
    return X, U, tau


def cl_counterexample_value(k: int) -> float:
    """Closed form 1 + k/(2(k+1)) + 1/(k+1), rounded once."""
    return float(1 + Fraction(k, 2 * (k + 1)) + Fraction(1, k + 1))


# -- instability scan --------------------------------------------------------

@dataclass(frozen=True)
class WitnessPair:
    """Two nearby path parameters on which a method's outputs differ at level R.

    ``input_gap`` is an upper bound on GH between the two inputs;
    ``output_gap`` is a certified lower bound on GH between the outputs
    (exact when ``output_gap_exact``).
    """

    s1: float
    s2: float
    input_gap: float
    input_gap_bound: float
    output_gap: float
    output_gap_exact: bool
    merged_at_R: tuple
    R: float
    delta: float

    @property
    def half_delta(self) -> float:
        return self.delta / 2

    def to_dict(self) -> dict:
        return {
            "s1": self.s1,
            "s2": self.s2,
            "input_gap": self.input_gap,
            "input_gap_bound": self.input_gap_bound,
            "output_gap": self.output_gap,
            "output_gap_exact": self.output_gap_exact,
            "merged_at_R": list(self.merged_at_R),
            "R": self.R,
            "delta": self.delta,
            "output_gap_meets_half_delta": self.output_gap >= self.half_delta - 1e-9,
        }


def _side_blocks(spec: PathSpec, t: float):
    if t < 1.0:
        return spec.blocks
    cmap = collapse_map(spec)
    B1, B2 = spec.blocks
    return frozenset(cmap[x] for x in B1), frozenset(cmap[x] for x in B2)


def merged_at_R(method, spec: PathSpec, t: float):
    """Run ``method`` on the path at ``t``; return (merged, output ultrametric)."""
    X = path_point(spec, t)
    u = eta(method(X))
    A, B = _side_blocks(spec, t)
    cross = u.dist[np.ix_(u.indices(A), u.indices(B))]
    return bool(cross.max() <= spec.R), u


def instability_scan(
    method,
    spec: PathSpec,
    tol: float = 1e-9,
    gh_budget: int = DEFAULT_GH_BUDGET,
    exact_limit: int = 8,
) -> WitnessPair:
    """Bisect the path for a flip in whether B1 and B2 merge at level R.

    The endpoints must behave differently (otherwise :class:`NoBehaviorFlip`).
    The output gap is computed by exact GH when both outputs have at most
    ``exact_limit`` points; otherwise the cheap lower bound is reported.
    """
    lo, hi = 0.0, 1.0
    m_lo, u_lo = merged_at_R(method, spec, lo)
    m_hi, u_hi = merged_at_R(method, spec, hi)
    if m_lo == m_hi:
        raise NoBehaviorFlip(f"the method {'merges' if m_lo else 'separates'} the blocks at R at both ends")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        m_mid, u_mid = merged_at_R(method, spec, mid)
        if m_mid == m_lo:
            lo, u_lo = mid, u_mid
        else:
            hi, u_hi = mid, u_mid
    X1, X2 = path_point(spec, lo), path_point(spec, hi)
    input_gap = gh_upper_from(_gap_correspondence(spec, lo, hi, X1, X2), X1, X2)
    if max(len(u_lo), len(u_hi)) <= exact_limit:
        res = gh_exact(u_lo, u_hi, budget=gh_budget)
        out_gap, exact = res.lower, res.exact
    else:
        out_gap, exact = gh_lower_bound(u_lo, u_hi), False
    return WitnessPair(
        s1=lo,
        s2=hi,
        input_gap=input_gap,
        input_gap_bound=(hi - lo) * spec.slope / 2,
        output_gap=out_gap,
        output_gap_exact=exact,
        merged_at_R=(m_lo, m_hi),
        R=spec.R,
        delta=spec.delta or 0.0,
    )


# -- semi-stability probe ----------------------------------------------------

@dataclass
class PerturbationReport:
    """Per-level GH between method outputs on perturbed inputs and the reference ultrametric."""

    method: str
    levels: list
    max_gh: list = field(default_factory=list)
    mean_gh: list = field(default_factory=list)
    all_exact: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def nonincreasing(self) -> bool:
        return all(b <= a for a, b in zip(self.max_gh, self.max_gh[1:]))

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "levels": list(self.levels),
            "max_gh": list(self.max_gh),
            "mean_gh": list(self.mean_gh),
            "all_exact": list(self.all_exact),
            "nonincreasing": self.nonincreasing,
            "rows": list(self.rows),
        }


def _direction(seed: int, trial: int, attempt: int, n: int) -> np.ndarray:
    rng = np.random.default_rng([seed, trial, attempt])
    r = np.triu(rng.uniform(-1.0, 1.0, size=(n, n)), 1)
    return r + r.T


def perturbed(U: FiniteMetricSpace, r: np.ndarray, level: float) -> FiniteMetricSpace | None:
    """``U`` with every distance moved by ``level/2 * r``; None if the result is not a metric."""
    try:
        return build_metric(U.labels, U.dist + (level / 2) * r)
    except MetricError:
        return None


def semistability_probe(
    U: FiniteMetricSpace,
    method,
    levels,
    trials: int = 50,
    seed: int = 0,
    gh_budget: int = DEFAULT_GH_BUDGET,
    exact_limit: int = 8,
    max_attempts: int = 100,
    method_name: str | None = None,
) -> PerturbationReport:
    """Perturb ``U`` entrywise by at most level/2 and measure GH(output, U) per level.

    Each trial draws one direction matrix r in [-1, 1] from (seed, trial,
    attempt) and uses it at every level, so levels differ only in scale. A
    direction is redrawn until it yields a metric at every level.
    """
    levels = [float(v) for v in levels]
    if any(b >= a for a, b in zip(levels, levels[1:])) or any(v < 0 for v in levels):
        raise ValueError("noise levels must be nonnegative and strictly decreasing")
    limit = min_distance_gap(U)
    if levels and levels[0] >= limit:
        raise LevelTooLarge(f"level {levels[0]!r} is not below the smallest distance gap {limit!r}")
    n = len(U)
    name = method_name or getattr(method, "label", getattr(method, "name", "method"))
    report = PerturbationReport(name, levels)
    per_level = {lv: [] for lv in levels}
    exact_flags = {lv: True for lv in levels}
    tau = identity_correspondence(U)
    for trial in range(trials):
        for attempt in range(max_attempts):
            r = _direction(seed, trial, attempt, n)
            spaces = [perturbed(U, r, lv) for lv in levels]
            if all(s is not None for s in spaces):
                break
        else:
            raise MetricViolation(f"no metric perturbation found in {max_attempts} attempts")
        for lv, X in zip(levels, spaces):
            out = eta(method(X))
            if n <= exact_limit:
                res = gh_exact(out, U, budget=gh_budget, hint=tau)
                gh, exact, lower, upper = res.value, res.exact, res.lower, res.upper
            else:
                upper = gh_upper_from(tau, out, U)
                lower = gh_lower_bound(out, U)
                gh, exact = upper, False
            per_level[lv].append(gh)
            exact_flags[lv] &= exact
            report.rows.append({
                "level": lv,
                "trial": trial,
                "attempt": attempt,
                "gh": gh,
                "lower": lower,
                "upper": upper,
                "exact": exact,
                "input_gap_upper": gh_upper_from(tau, X, U),
            })
    for lv in levels:
        vals = per_level[lv]
        report.max_gh.append(max(vals) if vals else 0.0)
        report.mean_gh.append(math.fsum(vals) / len(vals) if vals else 0.0)
        report.all_exact.append(exact_flags[lv])
    return report


# -- method-level checks -----------------------------------------------------

def ordinary_check(method, delta: float, R: float) -> dict:
    """Compare ``method`` with single linkage on I(R), I(delta, R) and I(delta, R, delta)."""
    out = {}
    for name, space in (
        ("I(R)", interval_space(R)),
        ("I(delta,R)", interval_space(delta, R)),
        ("I(delta,R,delta)", interval_space(delta, R, delta)),
    ):
        out[name] = method(space) == run_standard(space, SL)[0]
    return out

