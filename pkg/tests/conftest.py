import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hcstab.dendrogram import eta, validate_dendrogram
from hcstab.metric import build_metric

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    merged = {}
    for number, title, outcome, duration in _ACCEPTANCE:
        ok, total, count = merged.get(number, (title, True, 0.0, 0))[1:]
        merged[number] = (title, ok and outcome == "passed", total + duration, count + 1)
    for number, (title, ok, total, count) in sorted(merged.items()):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} ({total:.1f} s, {count} checks) {title}")


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture
def stopwatch():
    return Stopwatch()


# -- hypothesis strategies ----------------------------------------------------

@st.composite
def grid_metrics(draw, min_size=1, max_size=7, side=12):
    """Distinct integer points under L1: exact distances, plenty of ties."""
    n = draw(st.integers(min_size, max_size))
    pts = draw(st.lists(st.tuples(st.integers(0, side), st.integers(0, side)), min_size=n, max_size=n, unique=True))
    P = np.array(pts, dtype=float)
    D = np.abs(P[:, None, :] - P[None, :, :]).sum(axis=-1)
    return build_metric([f"x{i}" for i in range(n)], D)


@st.composite
def generic_metrics(draw, min_size=2, max_size=7):
    """Uniform Euclidean points; distances are distinct with probability one."""
    n = draw(st.integers(min_size, max_size))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    P = rng.uniform(0, 1, size=(n, 2))
    D = np.sqrt(((P[:, None, :] - P[None, :, :]) ** 2).sum(axis=-1))
    return build_metric([f"x{i}" for i in range(n)], D, tol=1e-12)


@st.composite
def ultrametrics(draw, min_size=1, max_size=8):
    """Random dendrograms built by merging groups of blocks at quarter-integer heights."""
    n = draw(st.integers(min_size, max_size))
    labels = [f"u{i}" for i in range(n)]
    blocks = [frozenset([x]) for x in labels]
    bps, parts, h = [0.0], [tuple(blocks)], 0.0
    while len(blocks) > 1:
        h += draw(st.integers(1, 4)) / 4
        tags = draw(st.lists(st.integers(0, len(blocks) - 1), min_size=len(blocks), max_size=len(blocks)))
        groups = {}
        for b, t in zip(blocks, tags):
            groups.setdefault(t, []).append(b)
        if len(groups) == len(blocks):
            groups = {0: blocks}
        blocks = [frozenset().union(*g) for g in groups.values()]
        bps.append(h)
        parts.append(tuple(blocks))
    return eta(validate_dendrogram(labels, bps, parts))
