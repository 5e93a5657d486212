"""Acceptance criteria 1-8, each at its stated tolerance and runtime limit.

Every test carries an ``acceptance`` marker; the terminal summary prints one
PASS/FAIL line per criterion. Run just these with ``pytest -m acceptance``.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcstab.cliques import adjacency_bits, max_clique_size, max_cross_clique_size
from hcstab.dendrogram import eta, eta_inverse
from hcstab.gromov_hausdorff import gh_exact, gh_upper_from
from hcstab.linkage import AL, CL, EXOTIC, SL, check_increasing, run_standard
from hcstab.methods import get_method
from hcstab.metric import interval_space
from hcstab.stability import (
    bridge_spec,
    cl_counterexample,
    cross_gap_violations,
    gamma_path,
    gamma_spec,
    instability_scan,
    prop_bridge_space,
    random_metric,
    random_ultrametric,
    semistability_probe,
)
from hcstab.unchaining import p_alpha, run_almost_standard, sl_alpha

from conftest import grid_metrics, ultrametrics
from oracles import gh_by_enumeration, max_clique_brute, max_cross_clique_brute

F = frozenset
FAITHFUL_METHODS = [("sl", {}), ("cl", {}), ("al", {}), ("sl-alpha", {"alpha": 1}), ("sl-alpha", {"alpha": 2}), ("sl-alpha", {"alpha": 3})]


@pytest.mark.acceptance(1, "faithfulness on 200 random ultrametrics, n <= 32")
def test_faithfulness(stopwatch):
    rng = np.random.default_rng(2024)
    methods = [get_method(name, **kw) for name, kw in FAITHFUL_METHODS]
    with stopwatch:
        for seed in range(200):
            U = random_ultrametric(int(rng.integers(1, 33)), depth=int(rng.integers(1, 6)), seed=seed)
            for method in methods:
                assert eta(method(U)) == U, (seed, method.label)
    assert stopwatch.elapsed < 60


@pytest.mark.acceptance(2, "single linkage is GH-stable on 100 pairs, n, m <= 5")
def test_single_linkage_stability(stopwatch):
    rng = np.random.default_rng(26)
    sl = get_method("sl")
    with stopwatch:
        for trial in range(100):
            X = random_metric(int(rng.integers(1, 6)), seed=2 * trial)
            Y = random_metric(int(rng.integers(1, 6)), seed=2 * trial + 1)
            before, after = gh_exact(X, Y), gh_exact(eta(sl(X)), eta(sl(Y)))
            assert before.exact and after.exact
            assert after.value <= before.value + 1e-12
    assert stopwatch.elapsed < 120


@pytest.mark.acceptance(3, "increasing linkage levels; exotic levels 1 and 3/4")
def test_increasing_levels(stopwatch):
    rng = np.random.default_rng(3)
    with stopwatch:
        for seed in range(200):
            M = random_metric(int(rng.integers(2, 17)), seed=seed)
            for linkage in (SL, CL, AL):
                assert check_increasing(run_standard(M, linkage)[1]), (seed, linkage.name)
        _, trace = run_standard(interval_space(2, 3, 2), EXOTIC)
    assert trace.levels == [1.0, 0.75]
    assert not check_increasing(trace)
    assert stopwatch.elapsed < 30


@pytest.mark.acceptance(4, "complete-linkage counterexample family, k = 0..20")
def test_complete_linkage_counterexample(stopwatch):
    with stopwatch:
        for k in range(21):
            X, U, tau = cl_counterexample(k)
            assert gh_upper_from(tau, X, U) <= 1 / (k + 1)
            u = eta(run_standard(X, CL)[0])
            want = 1 + Fraction(k, 2 * (k + 1)) + Fraction(1, k + 1)
            assert Fraction(u.d("a_-2", "b_-2")) == Fraction(float(want))
            if k <= 1:
                res = gh_exact(u, U)
                assert res.exact and res.lower > 0.2, (k, res.lower)
    assert stopwatch.elapsed < 120


@pytest.mark.acceptance(5, "average/complete linkage output gaps on I(1,1) vs I(1,5/4)")
def test_average_and_complete_instability(stopwatch):
    delta = 0.25
    X, Y = interval_space(1, 1), interval_space(1, 1 + delta)
    with stopwatch:
        assert gh_by_enumeration(X.dist, Y.dist) == delta / 2
        gaps = {}
        for linkage in (AL, CL):
            uX, uY = eta(run_standard(X, linkage)[0]), eta(run_standard(Y, linkage)[0])
            gaps[linkage.name] = gh_by_enumeration(uX.dist, uY.dist)
            assert gh_exact(uX, uY).value == gaps[linkage.name]
    print(f"input gap {delta / 2}, output gaps {gaps}")
    assert gaps["al"] >= 1 / 4
    assert gaps["cl"] >= 1 / 2
    assert stopwatch.elapsed < 5


@pytest.mark.acceptance(6, "SL(1) instability witness on the bridge path")
def test_sl_alpha_instability(stopwatch):
    # gap=1 makes the smallest distance gap of the space, delta, equal to 1
    M, B1, B2 = prop_bridge_space(1, gap=1.0)
    spec = bridge_spec(M, B1, B2)
    assert (spec.R, spec.delta) == (2.0, 1.0)
    with stopwatch:
        w = instability_scan(get_method("sl-alpha", alpha=1), spec, tol=1e-6)
    print(w.to_dict())
    assert w.s2 - w.s1 <= 1e-6
    assert w.input_gap <= 1e-6 * (M.diameter + spec.R + 2 * spec.delta) / 2
    assert w.output_gap_exact
    assert w.output_gap >= 0.5 - 1e-9
    assert stopwatch.elapsed < 300


@pytest.mark.acceptance(7, "semi-stability trend for SL, CL, AL, SL(2)")
@pytest.mark.parametrize("name, kw", [("sl", {}), ("cl", {}), ("al", {}), ("sl-alpha", {"alpha": 2})])
def test_semistability_trend(stopwatch, name, kw):
    U = random_ultrametric(6, depth=3, seed=7)
    levels = [0.1, 0.05, 0.025, 0.0125]
    with stopwatch:
        rep = semistability_probe(U, get_method(name, **kw), levels, trials=50, seed=0)
    print(name, rep.max_gh)
    assert all(rep.all_exact)
    assert rep.nonincreasing
    assert rep.max_gh[-1] < levels[-1] / 2 + 1e-9
    assert stopwatch.elapsed < 300


# -- criterion 8: property suites -------------------------------------------

@st.composite
def split_spaces(draw):
    M = draw(grid_metrics(2, 8))
    k = draw(st.integers(1, len(M) - 1))
    order = draw(st.permutations(M.labels))
    return M, F(order[:k]), F(order[k:])


@pytest.mark.acceptance(8, "property suites")
class TestPropertySuites:
    @settings(max_examples=300)
    @given(ultrametrics(max_size=10))
    def test_eta_roundtrip(self, U):
        theta = eta_inverse(U)
        assert eta(theta) == U
        assert eta_inverse(eta(theta)) == theta

    @settings(max_examples=200)
    @given(grid_metrics(1, 4, side=5), grid_metrics(1, 4, side=5), grid_metrics(1, 4, side=5))
    def test_gh_axioms(self, X, Y, Z):
        xy, yx = gh_exact(X, Y).value, gh_exact(Y, X).value
        assert xy == yx == gh_by_enumeration(X.dist, Y.dist)
        assert gh_exact(X, X).value == 0.0
        assert gh_exact(X, Z).value <= xy + gh_exact(Y, Z).value + 1e-12

    @settings(max_examples=1000)
    @given(split_spaces(), st.floats(0, 1), st.floats(0.01, 40))
    def test_gamma_path_points_are_metrics(self, case, t, R):
        M, B1, B2 = case
        X = gamma_path(gamma_spec(M, B1, B2, R), t)  # raises if the triangle inequality fails
        assert len(X) == (len(M) if t < 1 else 2)

    @settings(max_examples=1000)
    @given(st.floats(0, 1, exclude_max=True), st.sampled_from([0.5, 1.0]), st.sampled_from([1, 2]))
    def test_cross_distance_exclusion(self, t, gap, alpha):
        M, B1, B2 = prop_bridge_space(alpha, gap=gap)
        assert cross_gap_violations(bridge_spec(M, B1, B2), t) == []

    @settings(max_examples=300)
    @given(st.integers(1, 12), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1), st.data())
    def test_rips_dimensions_match_brute_force(self, n, p, seed, data):
        rng = np.random.default_rng(seed)
        upper = np.triu(rng.random((n, n)) < p, 1)
        adj = upper | upper.T
        nbrs = adjacency_bits(adj)
        assert max_clique_size(nbrs) == max_clique_brute(adj.tolist())
        k = data.draw(st.integers(0, n))
        lmask = (1 << k) - 1
        got = max_cross_clique_size(nbrs, lmask, ((1 << n) - 1) & ~lmask)
        assert got == max_cross_clique_brute(adj.tolist(), set(range(k)))

    def test_sl_alpha_equals_generic_recursion(self):
        rng = np.random.default_rng(8)
        for seed in range(200):
            M = random_metric(int(rng.integers(2, 11)), seed=seed)
            alpha = int(rng.integers(1, 4))
            assert sl_alpha(M, alpha)[0] == run_almost_standard(M, SL, p_alpha(alpha))[0], seed
