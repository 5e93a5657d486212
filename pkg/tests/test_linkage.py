import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hcstab.dendrogram import eta
from hcstab.errors import EmptyBlock, OverlappingBlocks
from hcstab.linkage import (
    AL,
    BUILTIN_LINKAGES,
    CL,
    EXOTIC,
    SL,
    axiom_harness,
    check_increasing,
    cross_distances,
    get_linkage,
    run_standard,
)
from hcstab.metric import interval_space, is_ultrametric

from conftest import generic_metrics, grid_metrics, ultrametrics
from oracles import lance_williams, minimax_paths

F = frozenset


class TestLinkageValues:
    def setup_method(self):
        self.M = interval_space(2, 3, 2)  # points 0, 2, 5, 7
        self.A, self.B = F({"p0", "p1"}), F({"p2", "p3"})

    def test_values_on_the_line(self):
        assert SL(self.A, self.B, self.M) == 3.0
        assert CL(self.A, self.B, self.M) == 7.0
        assert AL(self.A, self.B, self.M) == (5 + 7 + 3 + 5) / 4
        assert EXOTIC(self.A, self.B, self.M) == 3.0 / 4

    def test_block_errors(self):
        with pytest.raises(EmptyBlock):
            cross_distances(F(), self.B, self.M)
        with pytest.raises(OverlappingBlocks):
            SL(self.A, F({"p1", "p2"}), self.M)

    def test_registry(self):
        assert set(BUILTIN_LINKAGES) == {"sl", "cl", "al", "exotic"}
        with pytest.raises(ValueError):
            get_linkage("ward")


class TestStandardRecursion:
    def test_single_linkage_line(self):
        theta, trace = run_standard(interval_space(2, 3, 2), SL)
        assert trace.levels == [2.0, 3.0]
        assert theta.breakpoints == (0.0, 2.0, 3.0)

    def test_ties_merge_together(self):
        theta, trace = run_standard(interval_space(1, 1, 1), SL)
        assert trace.levels == [1.0]
        assert len(trace.rounds[0].edges) == 3

    def test_exotic_levels_decrease(self):
        theta, trace = run_standard(interval_space(2, 3, 2), EXOTIC)
        assert trace.levels == [1.0, 0.75]
        assert not check_increasing(trace)
        assert theta.breakpoints == (0.0, 0.75)

    @given(grid_metrics(min_size=2))
    def test_single_linkage_matches_minimax_paths(self, M):
        u = eta(run_standard(M, SL)[0])
        assert np.array_equal(u.dist, minimax_paths(M.dist))

    @given(generic_metrics(max_size=8))
    def test_complete_linkage_matches_textbook(self, M):
        u = eta(run_standard(M, CL)[0])
        assert np.array_equal(u.dist, lance_williams(M.dist, "cl"))

    @given(generic_metrics(max_size=8))
    def test_average_linkage_matches_textbook(self, M):
        u = eta(run_standard(M, AL)[0])
        assert np.allclose(u.dist, lance_williams(M.dist, "al"), rtol=1e-12, atol=0)

    @pytest.mark.parametrize("linkage", [SL, CL, AL])
    @given(M=grid_metrics(min_size=2))
    def test_outputs_are_ultrametric_with_increasing_levels(self, linkage, M):
        theta, trace = run_standard(M, linkage)
        assert check_increasing(trace)
        assert is_ultrametric(eta(theta))

    @pytest.mark.parametrize("linkage", [SL, CL, AL])
    @given(U=ultrametrics())
    def test_faithful(self, linkage, U):
        assert eta(run_standard(U, linkage)[0]) == U


class TestAxiomHarness:
    @pytest.mark.parametrize("linkage", [SL, CL, AL, EXOTIC])
    def test_builtins_pass(self, linkage):
        report = axiom_harness(linkage, trials=60, seed=3)
        assert report.ok, report.counterexamples

    def test_catches_a_non_monotone_linkage(self):
        from hcstab.linkage import LinkageSpec

        def inverse_sl(A, B, M):
            return 1.0 / SL(A, B, M)

        report = axiom_harness(LinkageSpec("inverse", inverse_sl), trials=60, seed=0)
        assert not report.passed["monotonicity"]
        assert not report.passed["scale_preservation"]
        assert report.passed["representation_independence"]
