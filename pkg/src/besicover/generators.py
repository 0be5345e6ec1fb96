"""Constructors for the spaces used throughout the package.

* :func:`make_paper_ultrametric` -- ``{1..N}`` with ``d(i, j) = 1 - 1/max(i, j)``.
* :func:`make_grid_square` -- ``{0..N-1}^2``; distance 1 on a shared row or
  column, 2 otherwise.
* :func:`make_zero_one` -- the discrete 0-1 metric.
* :func:`make_lattice` -- regular grids in ``[-1, 1]^dim`` under l1, l-infinity
  or (squared) l2.
* :func:`make_random_ultrametric` -- random dendrogram ultrametrics.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .exact import as_rational, format_rational
from .metric import FiniteMetricSpace

__all__ = [
    "make_paper_ultrametric",
    "make_grid_square",
    "make_zero_one",
    "make_lattice",
    "make_points",
    "make_random_ultrametric",
    "from_spec",
    "parse_gen",
]

NORMS = ("l1", "linf", "l2sq")
_NORM_ALIASES = {"l1": "l1", "linf": "linf", "inf": "linf", "max": "linf",
                 "l2sq": "l2sq", "l2": "l2sq", "l2-squared": "l2sq"}


def _check_positive(name, value):
    if int(value) != value or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def make_paper_ultrametric(N: int) -> FiniteMetricSpace:
    N = _check_positive("N", N)
    values = [Fraction(0)] + [1 - Fraction(1, k) for k in range(2, N + 1)]
    idx = np.arange(N)
    # point index i carries label i + 1, so 1 - 1/max(labels) sits at rank max(i, j)
    rank = np.maximum.outer(idx, idx)
    np.fill_diagonal(rank, 0)
    return FiniteMetricSpace(values, rank, [str(i) for i in range(1, N + 1)],
                             name=f"paper_ultrametric:{N}")


def make_grid_square(N: int) -> FiniteMetricSpace:
    """Point ``(x, y)`` has index ``x*N + y``, so index order is lexicographic."""
    N = _check_positive("N", N)
    xs, ys = np.divmod(np.arange(N * N), N)
    share = (xs[:, None] == xs[None, :]) | (ys[:, None] == ys[None, :])
    rank = np.where(share, 1, 2)
    np.fill_diagonal(rank, 0)
    labels = [f"({x},{y})" for x, y in zip(xs.tolist(), ys.tolist())]
    return FiniteMetricSpace([0, 1, 2], rank, labels, name=f"grid_square:{N}")


def grid_index(N: int, x: int, y: int) -> int:
    return x * N + y


def make_zero_one(n: int) -> FiniteMetricSpace:
    n = _check_positive("n", n)
    rank = 1 - np.eye(n, dtype=np.int32)
    values = [0, 1] if n > 1 else [0]
    return FiniteMetricSpace(values, rank, name=f"zero_one:{n}")


def _norm(norm: str) -> str:
    try:
        return _NORM_ALIASES[str(norm).lower()]
    except KeyError:
        raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}") from None


def make_lattice(dim: int, side: int, norm: str = "linf", lo=-1, hi=1) -> FiniteMetricSpace:
    """Grid with ``side`` points per axis spanning ``[lo, hi]``.

    ``side=21`` on ``[-1, 1]`` gives spacing 1/10.  With ``norm="l2sq"`` the
    stored values are squared Euclidean distances.
    """
    dim = _check_positive("dim", dim)
    side = _check_positive("side", side)
    norm = _norm(norm)
    lo, hi = as_rational(lo), as_rational(hi)
    h = (hi - lo) / (side - 1) if side > 1 else Fraction(1)
    steps = np.array(list(itertools.product(range(side), repeat=dim)), dtype=np.int64)
    diff = np.abs(steps[:, None, :] - steps[None, :, :])
    if norm == "linf":
        D = diff.max(axis=2)
    elif norm == "l1":
        D = diff.sum(axis=2)
    else:
        D = (diff * diff).sum(axis=2)
    uniq, rank = np.unique(D, return_inverse=True)
    scale = h * h if norm == "l2sq" else h
    values = [int(u) * scale for u in uniq]
    coords = [[lo + int(s) * h for s in row] for row in steps]
    if dim == 1:
        labels = [format_rational(c[0]) for c in coords]
    else:
        labels = ["(" + ",".join(format_rational(x) for x in c) + ")" for c in coords]
    return FiniteMetricSpace(values, rank.reshape(D.shape), labels, squared=(norm == "l2sq"),
                             name=f"lattice:{dim}:{side}:{norm}")


def lattice_coords(space: FiniteMetricSpace) -> list[tuple[Fraction, ...]]:
    """Recover coordinates from lattice labels."""
    out = []
    for lab in space.labels:
        parts = lab.strip("()").split(",")
        out.append(tuple(as_rational(p) for p in parts))
    return out


def make_points(coords, norm: str = "linf", labels=None) -> FiniteMetricSpace:
    """Space on explicit rational coordinates (small inputs)."""
    norm = _norm(norm)
    pts = [tuple(as_rational(x) for x in (c if isinstance(c, (list, tuple)) else [c])) for c in coords]
    n = len(pts)
    table = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            diffs = [abs(a - b) for a, b in zip(pts[i], pts[j])]
            if norm == "linf":
                v = max(diffs)
            elif norm == "l1":
                v = sum(diffs)
            else:
                v = sum(d * d for d in diffs)
            table[i][j] = table[j][i] = v
    if labels is None:
        labels = [format_rational(p[0]) if len(p) == 1 else
                  "(" + ",".join(map(format_rational, p)) + ")" for p in pts]
    return FiniteMetricSpace.from_table(table, labels, squared=(norm == "l2sq"), name="points")


def make_random_ultrametric(n: int, rng=None, branching: int = 3) -> FiniteMetricSpace:
    """Ultrametric from a random dendrogram.

    Clusters are merged (two or up to ``branching`` at a time) at strictly
    increasing random rational heights; the distance between two points is
    the height at which their clusters first merge.
    """
    n = _check_positive("n", n)
    rng = np.random.default_rng(rng)
    clusters = [[i] for i in range(n)]
    rank = np.zeros((n, n), dtype=np.int32)
    level = 0
    while len(clusters) > 1:
        level += 1
        k = int(rng.integers(2, min(branching, len(clusters)) + 1))
        picks = sorted(rng.choice(len(clusters), size=k, replace=False).tolist(), reverse=True)
        group = [clusters.pop(p) for p in picks]
        for a, b in itertools.combinations(group, 2):
            rank[np.ix_(a, b)] = level
            rank[np.ix_(b, a)] = level
        clusters.append([p for c in group for p in c])
    values = [Fraction(0)]
    for _ in range(level):
        values.append(values[-1] + Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 5))))
    return FiniteMetricSpace(values, rank, name=f"random_ultrametric:{n}")


_GENERATORS = {
    "paper_ultrametric": lambda a: make_paper_ultrametric(int(a["N"])),
    "grid_square": lambda a: make_grid_square(int(a["N"])),
    "zero_one": lambda a: make_zero_one(int(a["n"])),
    "lattice": lambda a: make_lattice(int(a["dim"]), int(a["side"]), a.get("norm", "linf"),
                                      a.get("lo", -1), a.get("hi", 1)),
    "random_ultrametric": lambda a: make_random_ultrametric(int(a["n"]), int(a.get("seed", 0))),
}
_ALIASES = {"paper_ultra": "paper_ultrametric", "ultra": "paper_ultrametric",
            "grid": "grid_square", "zero-one": "zero_one", "discrete": "zero_one",
            "random_ultra": "random_ultrametric"}


def from_spec(spec: dict) -> FiniteMetricSpace:
    """Build a space from ``{"gen": "paper_ultrametric", "N": 10}``-style specs."""
    name = _ALIASES.get(spec["gen"], spec["gen"])
    try:
        build = _GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown generator {spec['gen']!r}") from None
    return build(spec)


def parse_gen(text: str) -> FiniteMetricSpace:
    """Inline generator syntax.

    ``paper_ultra:10``, ``grid_square:4``, ``zero_one:7``,
    ``lattice:DIM:SIDE:NORM``, ``random_ultra:N:SEED``.
    """
    head, *args = text.split(":")
    name = _ALIASES.get(head, head)
    if name == "paper_ultrametric":
        return make_paper_ultrametric(int(args[0]))
    if name == "grid_square":
        return make_grid_square(int(args[0]))
    if name == "zero_one":
        return make_zero_one(int(args[0]))
    if name == "lattice":
        norm = args[2] if len(args) > 2 else "linf"
        return make_lattice(int(args[0]), int(args[1]), norm)
    if name == "random_ultrametric":
        return make_random_ultrametric(int(args[0]), int(args[1]) if len(args) > 1 else 0)
    raise ValueError(f"unknown generator {head!r}")
