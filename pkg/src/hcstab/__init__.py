"""Hierarchical clustering of finite metric spaces and its Gromov-Hausdorff stability."""

from .dendrogram import Dendrogram, eta, eta_inverse, from_merge_table, partition_at, to_merge_table, to_newick
from .gromov_hausdorff import Correspondence, GHResult, distortion, gh_exact, gh_lower_bound, gh_upper_from
from .linkage import AL, CL, EXOTIC, SL, LinkageSpec, axiom_harness, run_standard
from .methods import Method, get_method
from .metric import (
    FiniteMetricSpace,
    Ultrametric,
    build_metric,
    distance_set,
    interval_space,
    is_ultrametric,
    t_components,
)
from .unchaining import p_alpha, run_almost_standard, sl_alpha

__all__ = [
    "AL", "CL", "EXOTIC", "SL",
    "Correspondence", "Dendrogram", "FiniteMetricSpace", "GHResult", "LinkageSpec", "Method", "Ultrametric",
    "axiom_harness", "build_metric", "distance_set", "distortion", "eta", "eta_inverse", "from_merge_table",
    "get_method", "gh_exact", "gh_lower_bound", "gh_upper_from", "interval_space", "is_ultrametric",
    "p_alpha", "partition_at", "run_almost_standard", "run_standard", "sl_alpha", "t_components",
    "to_merge_table", "to_newick",
]
