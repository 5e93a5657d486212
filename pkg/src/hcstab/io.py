"""Reading distance matrices and writing dendrograms and reports."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .dendrogram import Dendrogram, merge_table_rows, to_json_obj, to_newick
from .errors import ShapeMismatch
from .metric import FiniteMetricSpace, build_metric

DENDROGRAM_FORMATS = ("json", "csv", "newick", "merge-table")
MERGE_CSV_HEADER = ["block_a", "block_b", "height", "merged_size"]


def parse_matrix_text(text: str, fmt: str | None = None, *, tol: float = 0.0, allow_pseudometric: bool = False):
    """Parse ``{"labels": [...], "dist": [[...]]}`` JSON or CSV with a header row of labels."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        obj = json.loads(text)
        if not isinstance(obj, dict) or "dist" not in obj:
            raise ShapeMismatch('expected an object with "labels" and "dist"')
        dist = obj["dist"]
        labels = obj.get("labels") or [f"x{i}" for i in range(len(dist))]
    elif fmt == "csv":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        if not rows:
            raise ShapeMismatch("empty CSV")
        labels = [c.strip() for c in rows[0]]
        try:
            dist = [[float(c) for c in r] for r in rows[1:]]
        except ValueError as exc:
            raise ShapeMismatch(f"non-numeric CSV entry: {exc}") from None
        if any(len(r) != len(labels) for r in dist):
            raise ShapeMismatch("every CSV row must have one entry per label")
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    return build_metric(labels, dist, tol=tol, allow_pseudometric=allow_pseudometric)


def read_matrix(path, *, tol: float = 0.0, allow_pseudometric: bool = False) -> FiniteMetricSpace:
    path = Path(path)
    fmt = {".json": "json", ".csv": "csv"}.get(path.suffix.lower())
    return parse_matrix_text(path.read_text(), fmt, tol=tol, allow_pseudometric=allow_pseudometric)


def matrix_to_json_obj(M: FiniteMetricSpace) -> dict:
    return {"labels": list(M.labels), "dist": M.dist.tolist()}


def write_matrix(M: FiniteMetricSpace, path) -> None:
    Path(path).write_text(dumps(matrix_to_json_obj(M)))


def dumps(obj) -> str:
    """Deterministic JSON; floats use the shortest round-trip representation."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def rows_to_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row[h]) for h in header])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return v


def render_dendrogram(theta: Dendrogram, fmt: str) -> str | dict:
    """Text for csv/newick, a JSON-ready object for json/merge-table."""
    if fmt == "json":
        return to_json_obj(theta)
    if fmt == "merge-table":
        return merge_table_rows(theta)
    if fmt == "csv":
        return rows_to_csv(MERGE_CSV_HEADER, merge_table_rows(theta))
    if fmt == "newick":
        return to_newick(theta) + "\n"
    raise ValueError(f"unknown format {fmt!r}; choose from {list(DENDROGRAM_FORMATS)}")
