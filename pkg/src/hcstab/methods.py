"""Named clustering methods: the dispatch layer used by experiments and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .dendrogram import Dendrogram
from .linkage import RunTrace, get_linkage, run_standard
from .metric import FiniteMetricSpace
from .unchaining import p_alpha, parse_condition, run_almost_standard, sl_alpha

METHOD_NAMES = ("sl", "cl", "al", "exotic", "sl-alpha", "almost-standard")


@dataclass(frozen=True)
class Method:
    """A clustering method ``run(M) -> (Dendrogram, RunTrace)`` with its resolved parameters."""

    name: str
    run: Callable[[FiniteMetricSpace], tuple[Dendrogram, RunTrace]] = field(repr=False)
    params: dict = field(default_factory=dict)

    def __call__(self, M: FiniteMetricSpace) -> Dendrogram:
        return self.run(M)[0]

    @property
    def label(self) -> str:
        if self.name == "sl-alpha":
            return f"sl-alpha:{self.params['alpha']:g}"
        if self.name == "almost-standard":
            return f"almost-standard:{self.params['linkage']}:{self.params['condition']}"
        return self.name


def get_method(
    name: str,
    *,
    alpha: float | None = None,
    linkage: str = "sl",
    condition: str = "always",
    schedule: str = "monotone",
) -> Method:
    if name in ("sl", "cl", "al", "exotic"):
        spec = get_linkage(name)
        return Method(name, lambda M: run_standard(M, spec))
    if name == "sl-alpha":
        if alpha is None:
            raise ValueError("sl-alpha needs alpha")
        a = float(alpha)
        p_alpha(a)  # raises AlphaTooSmall before any run
        return Method(name, lambda M: sl_alpha(M, a), {"alpha": a})
    if name == "almost-standard":
        spec = get_linkage(linkage)
        P = parse_condition(condition)
        params = {"linkage": linkage, "condition": condition, "schedule": schedule}
        return Method(name, lambda M: run_almost_standard(M, spec, P, schedule), params)
    raise ValueError(f"unknown method {name!r}; choose from {list(METHOD_NAMES)}")
