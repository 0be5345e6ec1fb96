"""Finite metric spaces with exact distances, named balls and axiom checks.

A space stores its distances as a sorted tuple of distinct rational values
plus an integer *rank* matrix indexing into it.  Because membership of a
point in a ball only depends on how a distance compares with the radius,
every ball query reduces to an integer comparison against a threshold found
by bisection on the exact values.

Spaces built from Euclidean coordinates keep *squared* distances
(``squared=True``) so that nothing irrational is ever stored; radii are then
squared before being compared.
"""

from __future__ import annotations

import hashlib
import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from math import isqrt, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exact import as_rational, format_rational, rational_between_sqrt, sqrt_lt

__all__ = [
    "Kind",
    "Ball",
    "BallFamily",
    "FiniteMetricSpace",
    "ValidationReport",
    "UltrametricReport",
    "validate_metric",
    "is_ultrametric",
    "ball_members",
    "same_members",
    "has_approx_midpoint",
    "critical_radii",
]


class Kind(str, Enum):
    OPEN = "open"
    CLOSED = "closed"

    @classmethod
    def coerce(cls, kind) -> "Kind":
        return kind if isinstance(kind, cls) else cls(str(kind).lower())


@dataclass(frozen=True)
class Ball:
    """A named ball: nominal center, nominal radius and kind.

    Equality is by name.  Two balls with the same member set but different
    centers or radii are different balls; use :func:`same_members` to
    compare member sets.
    """

    center: int
    radius: Fraction
    kind: Kind = Kind.CLOSED

    def __post_init__(self):
        r = as_rational(self.radius)
        if r <= 0:
            raise ValueError(f"ball radius must be positive, got {r}")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "kind", Kind.coerce(self.kind))
        object.__setattr__(self, "center", int(self.center))

    def renamed(self, center=None, radius=None) -> "Ball":
        return Ball(self.center if center is None else center,
                    self.radius if radius is None else radius, self.kind)

    def to_dict(self) -> dict:
        return {"center": self.center, "radius": format_rational(self.radius),
                "kind": self.kind.value}

    @classmethod
    def from_dict(cls, d) -> "Ball":
        return cls(int(d["center"]), as_rational(d["radius"]), Kind.coerce(d.get("kind", "closed")))

    def __str__(self):
        tag = "cl" if self.kind is Kind.CLOSED else "o"
        return f"B^{tag}({self.center}, {format_rational(self.radius)})"


class BallFamily(Sequence):
    """Ordered multiset of balls of a single kind (duplicates allowed)."""

    def __init__(self, balls: Iterable[Ball] = (), kind=None):
        self._balls = tuple(balls)
        kinds = {b.kind for b in self._balls}
        if kind is not None:
            kinds.add(Kind.coerce(kind))
        if len(kinds) > 1:
            raise ValueError("all balls in a family must be of the same kind")
        self.kind = kinds.pop() if kinds else Kind.CLOSED

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BallFamily(self._balls[i], self.kind)
        return self._balls[i]

    def __len__(self):
        return len(self._balls)

    def __iter__(self) -> Iterator[Ball]:
        return iter(self._balls)

    def __eq__(self, other):
        if isinstance(other, BallFamily):
            return self._balls == other._balls and self.kind == other.kind
        return NotImplemented

    def __hash__(self):
        return hash((self._balls, self.kind))

    def __repr__(self):
        return f"BallFamily([{', '.join(map(str, self._balls))}])"

    @property
    def balls(self) -> tuple[Ball, ...]:
        return self._balls

    def centers(self) -> list[int]:
        return [b.center for b in self._balls]

    def to_list(self) -> list[dict]:
        return [b.to_dict() for b in self._balls]


def _to_bits(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def bits_to_set(bits: int) -> frozenset[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return frozenset(out)


class FiniteMetricSpace:
    """Immutable finite metric space.

    Parameters
    ----------
    values : sequence of rationals
        Strictly increasing distinct distance values (stored form).
    rank : (n, n) integer array
        ``rank[i, j]`` indexes ``values``; ``dist(i, j) == values[rank[i, j]]``.
    labels : sequence of str, optional
        Display names, one per point.  Point identity is the index.
    squared : bool
        If true, stored values are squared distances.
    """

    def __init__(self, values, rank, labels=None, squared=False, name=None):
        vals = tuple(as_rational(v) for v in values)
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly increasing")
        rank = np.array(rank, dtype=np.int32, copy=True)
        if rank.ndim != 2 or rank.shape[0] != rank.shape[1]:
            raise ValueError("rank must be a square matrix")
        if rank.size and (rank.min() < 0 or rank.max() >= len(vals)):
            raise ValueError("rank entries out of range")
        rank.setflags(write=False)
        self.values = vals
        self.rank = rank
        n = rank.shape[0]
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per point required")
        self.squared = bool(squared)
        self.name = name
        self._thresholds: dict = {}

    @classmethod
    def from_table(cls, table, labels=None, squared=False, name=None) -> "FiniteMetricSpace":
        rows = [[as_rational(x) for x in row] for row in table]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("distance table must be square")
        vals = sorted({x for r in rows for x in r})
        index = {v: k for k, v in enumerate(vals)}
        rank = np.array([[index[x] for x in r] for r in rows], dtype=np.int32).reshape(n, n)
        return cls(vals, rank, labels, squared, name)

    @property
    def n(self) -> int:
        return self.rank.shape[0]

    def __len__(self):
        return self.n

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        sq = ", squared" if self.squared else ""
        return f"<FiniteMetricSpace{nm} n={self.n}{sq}>"

    def points(self) -> range:
        return range(self.n)

    def dist(self, i: int, j: int) -> Fraction:
        """Stored distance (squared distance when ``squared``)."""
        return self.values[self.rank[i, j]]

    def table(self) -> list[list[Fraction]]:
        v = self.values
        return [[v[k] for k in row] for row in self.rank.tolist()]

    def index_of(self, label: str) -> int:
        return self.labels.index(str(label))

    # -- radius comparisons -------------------------------------------------

    def radius_key(self, radius) -> Fraction:
        r = as_rational(radius)
        return r * r if self.squared else r

    def threshold(self, radius, kind) -> int:
        """Rank bound ``k``: ``p`` is in the ball iff ``rank[c, p] < k``."""
        key = (as_rational(radius), Kind.coerce(kind))
        k = self._thresholds.get(key)
        if k is None:
            rk = self.radius_key(key[0])
            k = (bisect_right if key[1] is Kind.CLOSED else bisect_left)(self.values, rk)
            self._thresholds[key] = k
        return k

    def ball_mask(self, ball: Ball) -> np.ndarray:
        return self.rank[ball.center] < self.threshold(ball.radius, ball.kind)

    def ball_bits(self, ball: Ball) -> int:
        return _to_bits(self.ball_mask(ball))

    def all_ball_masks(self, radius, kind) -> np.ndarray:
        """Membership matrix: row ``c`` is the ball of the given radius centered at ``c``."""
        return self.rank < self.threshold(radius, kind)

    def all_ball_bits(self, radius, kind) -> list[int]:
        packed = np.packbits(self.all_ball_masks(radius, kind), axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    def contains(self, ball: Ball, point: int) -> bool:
        return bool(self.rank[ball.center, point] < self.threshold(ball.radius, ball.kind))

    # -- cached global properties ------------------------------------------

    @cached_property
    def diameter(self) -> Fraction:
        """Largest stored distance (a squared value for ``squared`` spaces)."""
        return self.values[int(self.rank.max())] if self.n else Fraction(0)

    @cached_property
    def metric_valid(self) -> bool:
        return validate_metric(self).valid

    @cached_property
    def ultrametric(self) -> bool:
        return is_ultrametric(self).ultra

    @cached_property
    def min_positive_distance(self) -> Fraction | None:
        off = self.rank[~np.eye(self.n, dtype=bool)]
        if off.size == 0:
            return None
        return self.values[int(off.min())]

    def true_distance(self, i: int, j: int) -> Fraction:
        """The actual (unsquared) distance; only defined when it is rational."""
        v = self.dist(i, j)
        if not self.squared:
            return v
        p, q = v.numerator, v.denominator
        sp, sq = isqrt(p), isqrt(q)
        if sp * sp != p or sq * sq != q:
            raise ValueError(f"distance between {i} and {j} is irrational (sqrt({v}))")
        return Fraction(sp, sq)

    # -- derived spaces ------------------------------------------------------

    def permuted(self, perm: Sequence[int]) -> "FiniteMetricSpace":
        """Space whose point ``k`` is the old point ``perm[k]``."""
        p = np.asarray(perm)
        return FiniteMetricSpace(self.values, self.rank[np.ix_(p, p)],
                                 [self.labels[i] for i in p], self.squared, self.name)

    def subspace(self, points: Iterable[int]) -> "FiniteMetricSpace":
        pts = sorted(set(points))
        sub = self.rank[np.ix_(pts, pts)]
        used = np.unique(sub)
        remap = np.zeros(len(self.values), dtype=np.int32)
        remap[used] = np.arange(len(used))
        return FiniteMetricSpace([self.values[k] for k in used], remap[sub],
                                 [self.labels[i] for i in pts], self.squared, self.name)

    def scaled(self, factor) -> "FiniteMetricSpace":
        f = as_rational(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        if self.squared:
            f = f * f
        return FiniteMetricSpace([v * f for v in self.values], self.rank, self.labels,
                                 self.squared, self.name)

    def to_json_obj(self) -> dict:
        obj = {"labels": list(self.labels),
               "dist": [[format_rational(x) for x in row] for row in self.table()]}
        if self.squared:
            obj["squared"] = True
        return obj

    @cached_property
    def content_hash(self) -> str:
        blob = json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# axiom checks


@dataclass(frozen=True)
class ValidationReport:
    """``witness`` is ``(i,)`` for a bad self-distance, ``(i, j)`` for an
    asymmetric or non-positive pair, and ``(i, k, j)`` for a triangle
    violation ``d(i, j) > d(i, k) + d(k, j)``."""

    valid: bool
    witness: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def _triangle_violated(a: Fraction, b: Fraction, c: Fraction, squared: bool) -> bool:
    """Is ``a > b + c`` (in true distances)?"""
    if not squared:
        return a > b + c
    u = a - b - c
    return u > 0 and u * u > 4 * b * c


def _triangle_witness(space: FiniteMetricSpace) -> tuple[int, int, int] | None:
    n = space.n
    vals = space.values
    if n < 3:
        return None
    off = ~np.eye(n, dtype=bool)
    lo = vals[int(space.rank[off].min())]
    hi = vals[int(space.rank[off].max())]
    # every genuine triangle has two sides >= lo, so 2*lo >= hi settles it
    if (4 * lo >= hi) if space.squared else (2 * lo >= hi):
        return None

    den = reduce(lcm, (v.denominator for v in vals), 1)
    ints = [v.numerator * (den // v.denominator) for v in vals]
    limit = 2**29 if space.squared else 2**60
    if max(abs(x) for x in ints) < limit:
        T = np.asarray(ints, dtype=np.int64)[space.rank]
        for k in range(n):
            col = T[:, k, None]
            row = T[None, k, :]
            if space.squared:
                u = T - col - row
                bad = (u > 0) & (u * u > 4 * col * row)
            else:
                bad = T > col + row
            if bad.any():
                i, j = map(int, np.argwhere(bad)[0])
                return (i, k, j)
        return None

    # huge denominators: float screen, exact confirmation
    F = np.array([float(v) for v in vals])[space.rank]
    if space.squared:
        F = np.sqrt(F)
    for k in range(n):
        slack = F - (F[:, k, None] + F[None, k, :])
        cand = np.argwhere(slack > -1e-9 * (1.0 + np.abs(F)))
        for i, j in cand:
            i, j = int(i), int(j)
            if _triangle_violated(space.dist(i, j), space.dist(i, k), space.dist(k, j), space.squared):
                return (i, k, j)
    return None


def validate_metric(space: FiniteMetricSpace) -> ValidationReport:
    """Check zero self-distance, symmetry, positivity and the triangle inequality."""
    R = space.rank
    vals = space.values
    n = space.n
    for i in range(n):
        if vals[R[i, i]] != 0:
            return ValidationReport(False, (i,), "nonzero self-distance")
    asym = np.argwhere(R != R.T)
    if asym.size:
        i, j = map(int, asym[0])
        return ValidationReport(False, (i, j), "asymmetric distance")
    zero_rank = bisect_right(vals, Fraction(0))
    off = ~np.eye(n, dtype=bool)
    bad = np.argwhere((R < zero_rank) & off)
    if bad.size:
        i, j = map(int, bad[0])
        return ValidationReport(False, (i, j), "non-positive distance between distinct points")
    w = _triangle_witness(space)
    if w is not None:
        return ValidationReport(False, w, "triangle inequality violated")
    return ValidationReport(True)


@dataclass(frozen=True)
class UltrametricReport:
    """``witness = (i, j, w)`` with ``d(i, j) > max(d(i, w), d(w, j))``."""

    ultra: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ultra


def is_ultrametric(space: FiniteMetricSpace) -> UltrametricReport:
    # the strong triangle inequality only compares distances, so ranks suffice
    R = space.rank
    for w in range(space.n):
        bad = R > np.maximum(R[:, w, None], R[None, w, :])
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            return UltrametricReport(False, (i, j, w))
    return UltrametricReport(True)


def ball_members(space: FiniteMetricSpace, ball: Ball) -> frozenset[int]:
    return frozenset(np.flatnonzero(space.ball_mask(ball)).tolist())


def same_members(space: FiniteMetricSpace, a: Ball, b: Ball) -> bool:
    return bool(np.array_equal(space.ball_mask(a), space.ball_mask(b)))


def _count_below(space: FiniteMetricSpace, bound_pred) -> int:
    """Number of leading stored values whose true distance satisfies ``bound_pred``."""
    lo, hi = 0, len(space.values)
    while lo < hi:
        mid = (lo + hi) // 2
        if bound_pred(space.values[mid]):
            lo = mid + 1
        else:
            hi = mid
    return lo


def midpoint_rank_bound(space: FiniteMetricSpace, x: int, y: int, eps: Fraction) -> int:
    """Rank bound ``k`` such that ``d(p, q) < eps + d(x, y)/2`` iff ``rank[p, q] < k``."""
    dxy = space.dist(x, y)
    if space.squared:
        return _count_below(space, lambda v: sqrt_lt(v, eps, Fraction(1, 2), dxy))
    bound = eps + dxy / 2
    return _count_below(space, lambda v: v < bound)


def has_approx_midpoint(space: FiniteMetricSpace, x: int, y: int, eps) -> int | None:
    """Lowest-index ``z`` with ``d(x,z), d(z,y) < eps + d(x,y)/2``, else ``None``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if x == y:
        return x
    k = midpoint_rank_bound(space, x, y, eps)
    ok = np.flatnonzero((space.rank[x] < k) & (space.rank[y] < k))
    return int(ok[0]) if ok.size else None


def critical_radii(space: FiniteMetricSpace, factors=(1,), include_realized: bool = True) -> list[Fraction]:
    """Radii at which every configuration of balls of radius ``f*r`` (``f`` in
    ``factors``) is represented.

    Member sets of ``B(x, f*r)`` only change when ``f*r`` crosses a distance
    value.  Closed balls are right-continuous in ``r`` and open balls
    left-continuous, so one radius strictly inside each gap between
    consecutive critical values ``d/f`` (plus one beyond the last) realises
    every configuration of either kind.  Realised distances are added too
    when ``include_realized`` (they are redundant but handy in reports).
    """
    fs = [as_rational(f) for f in factors]
    positive = [v for v in space.values if v > 0]
    if space.squared:
        crit = sorted({v / (f * f) for v in positive for f in fs})
    else:
        crit = sorted({v / f for v in positive for f in fs})
    points = [Fraction(0)] + crit
    out = set()
    for a, b in zip(points, points[1:]):
        out.add(rational_between_sqrt(a, b) if space.squared else (a + b) / 2)
    top = points[-1]
    if space.squared:
        out.add(Fraction(isqrt(-(-top.numerator // top.denominator)) + 1))
    else:
        out.add(top + 1 if top else Fraction(1))
    if include_realized:
        for v in positive:
            if space.squared:
                p, q = v.numerator, v.denominator
                if isqrt(p) ** 2 == p and isqrt(q) ** 2 == q:
                    out.add(Fraction(isqrt(p), isqrt(q)))
            else:
                out.add(v)
    return sorted(out)
