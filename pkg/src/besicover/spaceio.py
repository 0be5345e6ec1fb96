"""JSON reading and writing of spaces.

A space file is either an explicit table::

    {"labels": ["a", "b"], "dist": [["0", "1/2"], ["1/2", "0"]]}

with every distance written as a ``"p/q"`` string (bare JSON integers are
also accepted, JSON floats are not), or a generator spec such as
``{"gen": "paper_ultrametric", "N": 10}``.  An optional ``"squared": true``
marks stored squared Euclidean distances.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import NotAMetric, SpaceParseError
from .exact import parse_rational
from .generators import from_spec
from .metric import FiniteMetricSpace, validate_metric

__all__ = ["dumps_space", "loads_space", "load_space", "save_space"]


def dumps_space(space: FiniteMetricSpace) -> str:
    obj = space.to_json_obj()
    lines = ["{", f'  "labels": {json.dumps(obj["labels"])},']
    if obj.get("squared"):
        lines.append('  "squared": true,')
    lines.append('  "dist": [')
    rows = [f"    {json.dumps(r)}" for r in obj["dist"]]
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _entry(x, i, j):
    if isinstance(x, bool) or isinstance(x, float):
        raise SpaceParseError(f"distance [{i}][{j}] must be an exact rational, got {x!r}", i, j)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return parse_rational(x)
        except ValueError:
            raise SpaceParseError(f"distance [{i}][{j}] is not a p/q rational: {x!r}", i, j) from None
    raise SpaceParseError(f"distance [{i}][{j}] has unsupported type {type(x).__name__}", i, j)


def loads_space(text: str, validate: bool = True) -> FiniteMetricSpace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpaceParseError("top-level JSON value must be an object")
    if "gen" in doc:
        try:
            return from_spec(doc)
        except (KeyError, ValueError) as exc:
            raise SpaceParseError(f"bad generator spec: {exc}") from None
    if "dist" not in doc:
        raise SpaceParseError('space file needs "dist" or "gen"')
    dist = doc["dist"]
    if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
        raise SpaceParseError('"dist" must be a list of rows')
    n = len(dist)
    for i, row in enumerate(dist):
        if len(row) != n:
            raise SpaceParseError(f"row {i} has {len(row)} entries, expected {n}", i, len(row))
    table = [[_entry(x, i, j) for j, x in enumerate(row)] for i, row in enumerate(dist)]
    labels = doc.get("labels")
    if labels is not None and len(labels) != n:
        raise SpaceParseError(f"{len(labels)} labels for {n} points")
    space = FiniteMetricSpace.from_table(table, labels, squared=bool(doc.get("squared", False)))
    if validate:
        rep = validate_metric(space)
        if not rep.valid:
            raise NotAMetric(f"not a metric: {rep.reason} at {rep.witness}", rep.witness)
    return space


def load_space(path, validate: bool = True) -> FiniteMetricSpace:
    return loads_space(Path(path).read_text(), validate=validate)


def save_space(space: FiniteMetricSpace, path) -> None:
    Path(path).write_text(dumps_space(space))
