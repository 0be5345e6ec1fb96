"""Besicovitch families, overlap counts and the Besicovitch constant.

A family of named balls is a Besicovitch family when no ball contains the
nominal center of another.  The Besicovitch constant ``L`` is the largest
number of such balls sharing a point.  Only balls through a common point
matter, so ``L`` is the maximum over points ``p`` of the largest clique in
the graph whose vertices are the balls containing ``p`` and whose edges
join balls that do not contain each other's centers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .clique import max_clique
from .errors import NotUltrametric
from .exact import as_rational, format_rational
from .metric import Ball, BallFamily, FiniteMetricSpace, Kind, critical_radii, is_ultrametric

__all__ = [
    "FamilyCheck",
    "OverlapReport",
    "BesicovitchReport",
    "BilipschitzWindow",
    "is_besicovitch_family",
    "max_overlap",
    "besicovitch_constant",
    "intersecting_family_check",
    "bilipschitz_compare",
]

CLIQUE_BUDGET = 10**7


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    pair: tuple[int, int] | None = None  # positions in the family

    def __bool__(self):
        return self.ok


def is_besicovitch_family(space: FiniteMetricSpace, family) -> FamilyCheck:
    balls = list(family)
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            a, b = balls[i], balls[j]
            if space.contains(a, b.center) or space.contains(b, a.center):
                return FamilyCheck(False, (i, j))
    return FamilyCheck(True)


@dataclass
class OverlapReport:
    max_overlap: int
    witness_point: int | None
    per_point: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {"max_overlap": self.max_overlap, "witness_point": self.witness_point,
                "per_point": self.per_point.tolist()}


def max_overlap(space: FiniteMetricSpace, family) -> OverlapReport:
    counts = np.zeros(space.n, dtype=np.int64)
    for b in family:
        counts += space.ball_mask(b)
    if not len(counts) or counts.max() == 0:
        return OverlapReport(0, None, counts)
    w = int(np.argmax(counts))
    return OverlapReport(int(counts[w]), w, counts)


@dataclass
class BesicovitchReport:
    L: int
    witness_family: BallFamily
    witness_point: int | None
    exact: bool
    kind: Kind = Kind.CLOSED
    pool: list[Fraction] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {"L": self.L, "exact": self.exact, "kind": self.kind.value,
                "witness_point": self.witness_point,
                "witness_family": self.witness_family.to_list(),
                "pool": [format_rational(r) for r in self.pool]}


def _pack_rows(mask: np.ndarray) -> list[int]:
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def besicovitch_constant(space: FiniteMetricSpace, radius_pool=None, kind="closed",
                         budget: int = CLIQUE_BUDGET) -> BesicovitchReport:
    """Largest intersecting Besicovitch family among balls with radii from the pool.

    Every (center, radius) name from the pool is enumerated; names with the
    same center and member set are interchangeable here and are merged.  The
    default pool realises every member set of every center.  ``exact`` is
    false only if some clique search ran out of budget, in which case ``L``
    is a lower bound.
    """
    kind = Kind.coerce(kind)
    pool = sorted({as_rational(r) for r in radius_pool}) if radius_pool is not None \
        else critical_radii(space, factors=(1,))
    if not pool:
        raise ValueError("radius pool must be nonempty")

    balls: list[Ball] = []
    rows = []
    seen = set()
    for c in range(space.n):
        for r in pool:
            m = space.rank[c] < space.threshold(r, kind)
            key = (c, m.tobytes())
            if key in seen:
                continue
            seen.add(key)
            balls.append(Ball(c, r, kind))
            rows.append(m)
    M = np.array(rows, dtype=bool)
    centers = np.array([b.center for b in balls])
    holds_center = M[:, centers]  # [a, b]: ball a contains the center of ball b
    compatible = ~holds_center & ~holds_center.T & (centers[:, None] != centers[None, :])
    Mf = M.astype(np.float32)
    meet = (Mf @ Mf.T) > 0
    edges = compatible & meet

    best_nodes = [0]
    best_point = int(np.flatnonzero(M[0])[0])
    exact = True
    if edges.any():
        active = edges.any(axis=1)
        for p in range(space.n):
            nodes = np.flatnonzero(M[:, p] & active)
            if len(nodes) <= len(best_nodes):
                continue
            sub = edges[np.ix_(nodes, nodes)]
            res = max_clique(_pack_rows(sub), budget)
            exact &= res.exact
            if res.size > len(best_nodes):
                best_nodes = [int(nodes[i]) for i in res.nodes]
                best_point = p
    family = BallFamily([balls[i] for i in best_nodes], kind)
    return BesicovitchReport(len(best_nodes), family, best_point, exact, kind, pool)


def intersecting_family_check(space: FiniteMetricSpace, family) -> FamilyCheck:
    """In an ultrametric space no two intersecting balls form a Besicovitch pair.

    Returns ``ok=False`` with the offending positions if some intersecting
    pair has each center outside the other ball.
    """
    if not is_ultrametric(space):
        raise NotUltrametric("intersecting_family_check needs an ultrametric space")
    balls = list(family)
    masks = [space.ball_mask(b) for b in balls]
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if (masks[i] & masks[j]).any():
                if not (masks[i][balls[j].center] or masks[j][balls[i].center]):
                    return FamilyCheck(False, (i, j))
    return FamilyCheck(True)


@dataclass(frozen=True)
class BilipschitzWindow:
    lower: Fraction
    upper: Fraction
    lower_pair: tuple[int, int] | None
    upper_pair: tuple[int, int] | None


def bilipschitz_compare(space_a: FiniteMetricSpace, space_b: FiniteMetricSpace) -> BilipschitzWindow:
    """Extreme values of ``d_b / d_a`` over pairs of distinct points."""
    if space_a.n != space_b.n:
        raise ValueError("spaces must have the same number of points")
    if space_a.squared or space_b.squared:
        raise ValueError("ratios of squared distances are not distance ratios")
    n = space_a.n
    if n < 2:
        return BilipschitzWindow(Fraction(1), Fraction(1), None, None)
    iu = np.triu_indices(n, 1)
    ra, rb = space_a.rank[iu], space_b.rank[iu]
    combos, first = np.unique(np.stack([ra, rb], axis=1), axis=0, return_index=True)
    ratios = [space_b.values[b] / space_a.values[a] for a, b in combos.tolist()]
    lo = min(range(len(ratios)), key=lambda k: (ratios[k], first[k]))
    hi = max(range(len(ratios)), key=lambda k: (ratios[k], -first[k]))
    pair = lambda k: (int(iu[0][first[k]]), int(iu[1][first[k]]))  # noqa: E731
    return BilipschitzWindow(ratios[lo], ratios[hi], pair(lo), pair(hi))
