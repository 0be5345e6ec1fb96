"""r-nets: greedy maximal construction, verification, and the net/ball duality.

Convention: a strict r-net (pairwise ``d > r``) goes with closed balls and a
non-strict one (pairwise ``d >= r``) with open balls, so that the balls of
radius ``r/2`` around the net points are disjoint in either case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .exact import as_rational, format_rational
from .metric import FiniteMetricSpace, Kind, midpoint_rank_bound

__all__ = ["Net", "NetCheck", "DualityReport", "greedy_maximal_net", "verify_net",
           "net_ball_duality", "net_kind"]


@dataclass(frozen=True)
class Net:
    points: tuple[int, ...]
    r: Fraction
    strict: bool
    maximal_in: frozenset[int] | None = None

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        return {"points": list(self.points), "r": format_rational(self.r), "strict": self.strict}

    @classmethod
    def from_dict(cls, d) -> "Net":
        return cls(tuple(int(p) for p in d["points"]), as_rational(d["r"]), bool(d["strict"]))


@dataclass(frozen=True)
class NetCheck:
    ok: bool
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def net_kind(strict: bool) -> Kind:
    return Kind.CLOSED if strict else Kind.OPEN


def _too_close(space: FiniteMetricSpace, r, strict: bool) -> np.ndarray:
    # strict: forbidden when d <= r (closed ball); non-strict: when d < r (open ball)
    return space.all_ball_masks(r, net_kind(strict))


def greedy_maximal_net(space: FiniteMetricSpace, scope: Iterable[int], r, strict: bool) -> Net:
    """Scan ``scope`` in ascending index order, keeping every point far enough
    from those already kept.  The result is maximal within ``scope``."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    pts = sorted(set(scope))
    if not pts:
        raise ValueError("scope must be nonempty")
    kind = net_kind(strict)
    k = space.threshold(r, kind)
    blocked = np.zeros(space.n, dtype=bool)
    chosen = []
    for p in pts:
        if not blocked[p]:
            chosen.append(p)
            blocked |= space.rank[p] < k
    return Net(tuple(chosen), r, strict, frozenset(pts))


def verify_net(space: FiniteMetricSpace, net: Net) -> NetCheck:
    pts = list(net.points)
    if len(pts) < 2:
        return NetCheck(True)
    close = _too_close(space, net.r, net.strict)[np.ix_(pts, pts)]
    np.fill_diagonal(close, False)
    bad = np.argwhere(close)
    if bad.size:
        i, j = bad[0]
        return NetCheck(False, (pts[int(i)], pts[int(j)]))
    return NetCheck(True)


def is_maximal(space: FiniteMetricSpace, net: Net, scope: Iterable[int] | None = None) -> bool:
    scope = net.maximal_in if scope is None else frozenset(scope)
    if scope is None:
        scope = frozenset(range(space.n))
    close = _too_close(space, net.r, net.strict)
    covered = close[list(net.points)].any(axis=0) if net.points else np.zeros(space.n, bool)
    return all(covered[p] for p in scope)


@dataclass(frozen=True)
class DualityReport:
    """Outcome of comparing the net condition with disjointness of open r/2-balls.

    ``forward_ok``: if ``S`` is a non-strict r-net, its open r/2-balls are
    pairwise disjoint (always expected to hold).  ``reverse_witness``: when
    ``S`` is not a net, a violating pair ``(x, y)`` plus a point ``z`` in both
    open r/2-balls that is also an eps-approximate midpoint of ``x, y``, or
    ``z = None`` when no such point exists.
    """

    is_net: bool
    balls_disjoint: bool
    forward_ok: bool
    reverse_witness: tuple[int, int, int | None] | None

    @property
    def net_violated_without_ball_witness(self) -> bool:
        return self.reverse_witness is not None and self.reverse_witness[2] is None


def net_ball_duality(space: FiniteMetricSpace, S: Iterable[int], r, eps) -> DualityReport:
    r = as_rational(r)
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    pts = sorted(set(S))
    half = space.all_ball_masks(r / 2, Kind.OPEN)
    disjoint = True
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if (half[pts[a]] & half[pts[b]]).any():
                disjoint = False
                break
        if not disjoint:
            break
    check = verify_net(space, Net(tuple(pts), r, strict=False))
    forward_ok = (not check.ok) or disjoint
    witness = None
    if not check.ok:
        x, y = sorted(check.pair)
        both = half[x] & half[y]
        k = midpoint_rank_bound(space, x, y, eps)
        mids = both & (space.rank[x] < k) & (space.rank[y] < k)
        hits = np.flatnonzero(mids)
        witness = (x, y, int(hits[0]) if hits.size else None)
    return DualityReport(check.ok, disjoint, forward_ok, witness)

