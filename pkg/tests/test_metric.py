import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hcstab.errors import (
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
from hcstab.metric import (
    as_ultrametric,
    build_metric,
    collapse_duplicates,
    distance_set,
    interval_space,
    is_ultrametric,
    permute,
    relabel,
    restrict,
    scale,
    t_components,
)

from conftest import grid_metrics, ultrametrics


class TestBuildMetric:
    def test_valid_triangle(self):
        M = build_metric("abc", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        assert M.d("a", "c") == 2.0
        assert M.diameter == 2.0
        assert not M.dist.flags.writeable

    def test_triangle_violation_names_the_triple(self):
        with pytest.raises(TriangleViolation) as info:
            build_metric("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
        assert set(info.value.triple) == {"a", "b", "c"}

    @pytest.mark.parametrize(
        "matrix, error",
        [
            ([[0, 1], [2, 0]], AsymmetricMatrix),
            ([[1, 1], [1, 0]], NonzeroDiagonal),
            ([[0, -1], [-1, 0]], NegativeDistance),
            ([[0, np.inf], [np.inf, 0]], NonFiniteDistance),
            ([[0, 0], [0, 0]], DuplicatePoint),
            ([[0, 1, 1], [1, 0, 1]], ShapeMismatch),
        ],
    )
    def test_rejections(self, matrix, error):
        with pytest.raises(error):
            build_metric("ab", matrix)

    def test_duplicate_labels_and_empty_input(self):
        with pytest.raises(DuplicateLabel):
            build_metric("aa", [[0, 1], [1, 0]])
        with pytest.raises(EmptyInput):
            build_metric([], np.zeros((0, 0)))

    def test_pseudometric_collapse(self):
        D = [[0, 0, 2], [0, 0, 2], [2, 2, 0]]
        M, rep = collapse_duplicates("abc", D)
        assert M.labels == ("a", "c")
        assert rep == {"a": "a", "b": "a", "c": "c"}

    def test_tolerance_symmetrizes(self):
        M = build_metric("ab", [[0, 1.0], [1.0 + 1e-13, 0]], tol=1e-12)
        assert M.dist[0, 1] == M.dist[1, 0]

    def test_unknown_label(self):
        M = interval_space(1.0)
        with pytest.raises(UnknownLabel):
            M.d("p0", "zz")


class TestUltrametric:
    def test_strong_triangle(self):
        M = build_metric("abc", [[0, 1, 2], [1, 0, 2], [2, 2, 0]])
        assert is_ultrametric(M)
        assert type(as_ultrametric(M)).__name__ == "Ultrametric"

    def test_line_is_not_ultrametric(self):
        with pytest.raises(NotUltrametric):
            as_ultrametric(interval_space(1.0, 1.0))

    @given(ultrametrics())
    def test_generated_ultrametrics_pass(self, U):
        assert is_ultrametric(U)


class TestDistanceSetAndComponents:
    def test_interval_space_sums_are_exact(self):
        M = interval_space(0.1, 0.2, 0.3)
        assert M.d("p0", "p3") == math.fsum([0.1, 0.2, 0.3])
        assert interval_space(1, 0.25).d("p0", "p2") == 1.25
        assert distance_set(M)[0] == 0.0

    def test_interval_space_rejects_bad_gaps(self):
        with pytest.raises(NonpositiveScale):
            interval_space(1.0, 0.0)
        with pytest.raises(EmptyInput):
            interval_space()

    def test_t_components_of_line(self):
        M = interval_space(2, 3, 2)
        assert t_components(M, 2) == (frozenset({"p0", "p1"}), frozenset({"p2", "p3"}))
        assert t_components(M, 1.9) == tuple(frozenset([x]) for x in M.labels)
        assert t_components(M, 3) == (frozenset(M.labels),)

    @given(grid_metrics(), st.integers(0, 30))
    def test_t_components_partition_and_separation(self, M, t):
        comps = t_components(M, t)
        assert sorted(x for c in comps for x in c) == sorted(M.labels)
        for i, A in enumerate(comps):
            for B in comps[i + 1 :]:
                assert all(M.d(a, b) > t for a in A for b in B)

    @given(grid_metrics(min_size=2))
    def test_distance_set_sorted_distinct(self, M):
        ds = distance_set(M)
        assert list(ds) == sorted(set(ds))
        assert set(ds) == set(M.dist.ravel().tolist())


class TestTransforms:
    def test_scale(self):
        M = scale(interval_space(1, 2), 3.0)
        assert M.d("p0", "p2") == 9.0
        with pytest.raises(NonpositiveScale):
            scale(M, 0)

    def test_restrict_and_relabel(self):
        M = interval_space(1, 2, 3)
        S = restrict(M, ["p3", "p1"])
        assert S.labels == ("p1", "p3") and S.d("p1", "p3") == 5.0
        with pytest.raises(EmptySubset):
            restrict(M, [])
        R = relabel(M, lambda x: x.upper())
        assert R.d("P0", "P3") == 6.0

    @given(grid_metrics(min_size=2), st.randoms())
    def test_permute_preserves_distances(self, M, rnd):
        order = list(range(len(M)))
        rnd.shuffle(order)
        P = permute(M, order)
        for a in M.labels:
            for b in M.labels:
                assert P.d(a, b) == M.d(a, b)

    @given(st.lists(st.floats(1e-3, 1e3, allow_nan=False), min_size=1, max_size=6))
    def test_interval_space_accepts_any_positive_gaps(self, gaps):
        M = interval_space(*gaps)
        assert len(M) == len(gaps) + 1
