"""Constructive covering algorithms.

Selections scan larger radii first and break ties by ascending point index,
then input position, so every result is deterministic.  Each function returns
disjoint subfamilies of the input and reports what it covered; bounds are
only asserted when the caller supplies the constants they depend on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .besicovitch import OverlapReport, max_overlap
from .errors import BoundViolated, CoverIncomplete, NotUltrametric, PreconditionViolated, RadiusOutOfRange
from .exact import as_rational, ceil_log2, floor_log2, format_rational, rational_between_sqrt
from .metric import Ball, BallFamily, FiniteMetricSpace, Kind, bits_to_set, is_ultrametric, midpoint_rank_bound

__all__ = [
    "CoverResult",
    "GenerationBucket",
    "BesicovitchCover",
    "equal_radius_cover",
    "ultrametric_greedy_disjoint_cover",
    "localized_cover",
    "localized_bound",
    "generation_of",
    "besicovitch_cover",
    "disjoint_rearrangement",
    "midpoint_spot_check",
    "find_inner_ball",
]


def _set_bits(points: Iterable[int]) -> int:
    bits = 0
    for p in points:
        bits |= 1 << int(p)
    return bits


def _union(space: FiniteMetricSpace, balls) -> int:
    u = 0
    for b in balls:
        u |= space.ball_bits(b)
    return u


@dataclass
class CoverResult:
    families: list[BallFamily]
    covered: frozenset[int]
    leftover: frozenset[int]
    bound: int | None = None
    midpoints_ok: bool | None = None  # set by disjoint_rearrangement when it checks its bound
    notes: list[str] = field(default_factory=list)
    inner_balls: list[dict] | None = None

    @property
    def m(self) -> int:
        return len(self.families)

    def balls(self) -> list[Ball]:
        return [b for fam in self.families for b in fam]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "bound": self.bound,
            "families": [fam.to_list() for fam in self.families],
            "covered": sorted(self.covered),
            "leftover": sorted(self.leftover),
            "midpoints_ok": self.midpoints_ok,
            "notes": list(self.notes),
        }


def _result(space, target: int, families, bound=None) -> CoverResult:
    u = _union(space, (b for f in families for b in f))
    return CoverResult(families, bits_to_set(target & u), bits_to_set(target & ~u), bound)


def _extract_rounds(space: FiniteMetricSpace, balls: list[Ball], pending: int, kind) -> tuple[list[BallFamily], int]:
    """Repeated maximal-disjoint extraction.

    Each round scans the balls whose centers are still in ``pending``, larger
    radii first (then lower center, then input position), and keeps every
    ball disjoint from those already kept in the round.  Points covered by
    the round leave ``pending``.  Returns the rounds and the union covered.
    """
    bits = [space.ball_bits(b) for b in balls]
    order = sorted(range(len(balls)), key=lambda i: (-balls[i].radius, balls[i].center, i))
    families = []
    covered = 0
    while pending:
        used = 0
        chosen = []
        for i in order:
            if pending >> balls[i].center & 1 and not bits[i] & used:
                chosen.append(balls[i])
                used |= bits[i]
        families.append(BallFamily(chosen, kind))
        covered |= used
        pending &= ~used
    return families, covered


def equal_radius_cover(space: FiniteMetricSpace, A: Iterable[int], r, kind="closed") -> CoverResult:
    """Cover ``A`` by balls of radius ``r`` centered at its points, grouped
    into disjoint families by repeated maximal-disjoint extraction."""
    kind = Kind.coerce(kind)
    r = as_rational(r)
    pts = sorted(set(int(a) for a in A))
    if not pts:
        return CoverResult([], frozenset(), frozenset())
    balls = [Ball(a, r, kind) for a in pts]
    target = _set_bits(pts)
    families, _ = _extract_rounds(space, balls, target, kind)
    return _result(space, target, families)


def _check_centered(space, A: int, C: BallFamily, need_every_center: bool):
    centers = _set_bits(C.centers())
    if centers & ~A:
        bad = bits_to_set(centers & ~A)
        raise CoverIncomplete(f"ball centers {sorted(bad)[:5]} are outside A")
    if need_every_center and A & ~centers:
        raise CoverIncomplete(f"points {sorted(bits_to_set(A & ~centers))[:5]} of A carry no ball")
    missing = A & ~_union(space, C)
    if missing:
        raise CoverIncomplete(f"points {sorted(bits_to_set(missing))[:5]} of A are not covered")


def ultrametric_greedy_disjoint_cover(space: FiniteMetricSpace, A: Iterable[int], C) -> BallFamily:
    """One disjoint subfamily of ``C`` covering ``A`` (ultrametric spaces only).

    Repeatedly takes the first uncovered point and keeps the largest ball of
    ``C`` containing it (ties: lowest center, then earliest position).
    Intersecting balls nest in an ultrametric space, so nothing chosen later
    can meet an earlier choice.
    """
    if not is_ultrametric(space):
        raise NotUltrametric("ultrametric_greedy_disjoint_cover needs an ultrametric space")
    C = BallFamily(C)
    target = _set_bits(A)
    _check_centered(space, target, C, need_every_center=False)
    bits = [space.ball_bits(b) for b in C]
    chosen = []
    covered = 0
    pending = target
    while pending:
        p = (pending & -pending).bit_length() - 1
        best = None
        for i, b in enumerate(C):
            if bits[i] >> p & 1:
                key = (-b.radius, b.center, i)
                if best is None or key < best[0]:
                    best = (key, i)
        i = best[1]
        if bits[i] & covered:
            raise AssertionError("selected balls intersect; space is not ultrametric")
        chosen.append(C[i])
        covered |= bits[i]
        pending &= ~covered
    return BallFamily(chosen, C.kind)


def localized_bound(D: int, ratio) -> int:
    """``max(D**2, ceil(log2 ratio) * D**3)``."""
    ratio = as_rational(ratio)
    k = ceil_log2(ratio) if ratio > 1 else 0
    return max(D**2, k * D**3)


def localized_cover(space: FiniteMetricSpace, A: Iterable[int], C, r=None, R=None,
                    known_D: int | None = None) -> CoverResult:
    """Disjoint subfamilies of ``C`` covering ``A``, radii confined to ``[r, R]``.

    Every point of ``A`` must carry at least one ball of ``C`` and every ball
    must be centered in ``A``.  When ``R/r > 2`` the radii are split into the
    dyadic ranges ``(2**(j-1) r, 2**j r]`` (the first range also takes ``r``)
    and each range is handled in turn, covering only its centers that are
    still uncovered.  ``r`` and ``R`` default to the extreme radii of ``C``.
    """
    C = BallFamily(C)
    target = _set_bits(A)
    if not target:
        return CoverResult([], frozenset(), frozenset(), None)
    if not len(C):
        raise CoverIncomplete("empty ball family")
    radii = [b.radius for b in C]
    r = min(radii) if r is None else as_rational(r)
    R = max(radii) if R is None else as_rational(R)
    if not 0 < r <= R:
        raise RadiusOutOfRange(f"need 0 < r <= R, got r={r}, R={R}")
    for b in C:
        if not r <= b.radius <= R:
            raise RadiusOutOfRange(f"{b} has radius outside [{format_rational(r)}, {format_rational(R)}]")
    _check_centered(space, target, C, need_every_center=True)

    ranges: dict[int, list[Ball]] = {}
    split = R / r > 2
    for b in C:
        j = ceil_log2(b.radius / r) if split and b.radius > r else 0
        ranges.setdefault(max(j, 1) if split else 0, []).append(b)

    families: list[BallFamily] = []
    covered = 0
    for j in sorted(ranges):
        group = ranges[j]
        pending = _set_bits(b.center for b in group) & ~covered
        fams, got = _extract_rounds(space, group, pending, C.kind)
        families.extend(fams)
        covered |= got

    bound = localized_bound(known_D, R / r) if known_D is not None else None
    res = _result(space, target, families, bound)
    if res.leftover:
        raise AssertionError("localized extraction left points uncovered")
    if bound is not None and res.m > bound:
        raise BoundViolated(f"m={res.m} exceeds max(D^2, ceil(log2(R/r)) D^3) = {bound} for D={known_D}")
    return res


# ---------------------------------------------------------------------------
# generations


def generation_of(radius, R) -> int:
    """Generation ``n >= 1`` with ``(1/2)**n R < radius <= (1/2)**(n-1) R``."""
    radius, R = as_rational(radius), as_rational(R)
    if not 0 < radius <= R:
        raise RadiusOutOfRange(f"radius {radius} not in (0, {R}]")
    return floor_log2(R / radius) + 1


@dataclass
class GenerationBucket:
    n: int
    balls: BallFamily
    lower: Fraction  # exclusive
    upper: Fraction  # inclusive
    targets: frozenset[int] = frozenset()  # centers still uncovered when the stage ran
    m: int = 0

    def to_dict(self) -> dict:
        return {"n": self.n, "lower": format_rational(self.lower), "upper": format_rational(self.upper),
                "balls": self.balls.to_list(), "targets": sorted(self.targets), "m": self.m}


def _buckets(C: BallFamily, R: Fraction) -> list[GenerationBucket]:
    groups: dict[int, list[Ball]] = {}
    for b in C:
        groups.setdefault(generation_of(b.radius, R), []).append(b)
    half = Fraction(1, 2)
    return [GenerationBucket(n, BallFamily(groups[n], C.kind), half**n * R, half ** (n - 1) * R)
            for n in sorted(groups)]


@dataclass
class BesicovitchCover:
    selected: BallFamily
    buckets: list[GenerationBucket]
    stage_families: list[list[BallFamily]] = field(repr=False)
    overlap: OverlapReport
    covered: frozenset[int]
    leftover: frozenset[int]
    R: Fraction
    bound: int | None = None

    @property
    def per_scale(self) -> int:
        """Largest number of disjoint families any generation needed."""
        return max((b.m for b in self.buckets), default=0)

    def to_dict(self) -> dict:
        return {
            "R": format_rational(self.R),
            "selected": self.selected.to_list(),
            "overlap": self.overlap.max_overlap,
            "witness_point": self.overlap.witness_point,
            "per_scale": self.per_scale,
            "bound": self.bound,
            "generations": [b.to_dict() for b in self.buckets],
            "covered": sorted(self.covered),
            "leftover": sorted(self.leftover),
        }


def besicovitch_cover(space: FiniteMetricSpace, A: Iterable[int], C, R=None,
                      known_L: int | None = None, known_C: int | None = None) -> BesicovitchCover:
    """Subfamily of ``C`` covering ``A`` with bounded overlap.

    Balls are grouped by generation (dyadic radius band below ``R``).
    Generation by generation, from the largest radii down, the centers not
    yet covered are covered by :func:`localized_cover` restricted to that
    generation's balls.  With ``known_L`` and ``known_C`` the overlap is
    checked against ``L*C``.
    """
    C = BallFamily(C)
    target = _set_bits(A)
    if not target:
        empty = np.zeros(space.n, dtype=np.int64)
        return BesicovitchCover(BallFamily([], C.kind), [], [], OverlapReport(0, None, empty),
                                frozenset(), frozenset(), Fraction(0))
    if not len(C):
        raise CoverIncomplete("empty ball family")
    _check_centered(space, target, C, need_every_center=True)
    R = max(b.radius for b in C) if R is None else as_rational(R)

    buckets = _buckets(C, R)
    covered = 0
    selected: list[Ball] = []
    stages = []
    for bucket in buckets:
        pending = _set_bits(bucket.balls.centers()) & ~covered
        bucket.targets = bits_to_set(pending)
        if not pending:
            stages.append([])
            continue
        sub = BallFamily([b for b in bucket.balls if pending >> b.center & 1], C.kind)
        res = localized_cover(space, bucket.targets, sub)
        bucket.m = res.m
        stages.append(res.families)
        for fam in res.families:
            selected.extend(fam)
            covered |= _union(space, fam)
    fam = BallFamily(selected, C.kind)
    ov = max_overlap(space, fam)
    bound = known_L * known_C if known_L is not None and known_C is not None else None
    out = BesicovitchCover(fam, buckets, stages, ov, bits_to_set(target & covered),
                           bits_to_set(target & ~covered), R, bound)
    if out.leftover:
        raise AssertionError("generation stages left points uncovered")
    if bound is not None and ov.max_overlap > bound:
        raise BoundViolated(f"overlap {ov.max_overlap} at point {ov.witness_point} exceeds L*C = {bound}")
    return out


# ---------------------------------------------------------------------------
# rearrangement into disjoint families


def midpoint_spot_check(space: FiniteMetricSpace, eps=None) -> tuple[bool, tuple[int, int] | None]:
    """Does every pair have a point within ``eps + d/2`` of both ends?

    ``eps`` defaults to the smallest positive distance.  Pairs are grouped by
    distance value; for each value one boolean matrix product decides all of
    them at once.  Returns the first failing pair, if any.
    """
    if space.n < 2:
        return True, None
    if eps is None:
        v = space.min_positive_distance
        # squared spaces: any rational at least the true minimum distance
        eps = rational_between_sqrt(v, 4 * v) if space.squared else v
    eps = as_rational(eps)
    for k in range(1, len(space.values)):
        pairs = np.argwhere(np.triu(space.rank == k, 1))
        if not len(pairs):
            continue
        x, y = map(int, pairs[0])
        bound = midpoint_rank_bound(space, x, y, eps)
        near = (space.rank < bound).astype(np.float32)
        reach = near @ near
        bad = reach[pairs[:, 0], pairs[:, 1]] == 0
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            return False, (int(pairs[i, 0]), int(pairs[i, 1]))
    return True, None


def disjoint_rearrangement(space: FiniteMetricSpace, Cp, known_L: int | None = None,
                           known_D: int | None = None, R=None, eps=None,
                           diagnostic: bool = False) -> CoverResult:
    """Regroup a bounded-overlap family into disjoint families with the same union.

    Each round walks the generations from the largest radii down and keeps
    every remaining ball disjoint from those already kept in the round.
    With ``known_L`` and ``known_D`` the count is checked against
    ``L*D**6 + 1``, but only when the space passes
    :func:`midpoint_spot_check` (the bound relies on approximate midpoints).
    ``diagnostic`` additionally records, for each pair of intersecting balls
    in a family-forcing chain, whether an inner ball exists.
    """
    Cp = BallFamily(Cp)
    if not len(Cp):
        return CoverResult([], frozenset(), frozenset())
    R = max(b.radius for b in Cp) if R is None else as_rational(R)
    order = sorted(range(len(Cp)), key=lambda i: (generation_of(Cp[i].radius, R), Cp[i].center, i))
    bits = [space.ball_bits(b) for b in Cp]
    remaining = list(order)
    families = []
    while remaining:
        used = 0
        keep, rest = [], []
        for i in remaining:
            if bits[i] & used:
                rest.append(i)
            else:
                keep.append(i)
                used |= bits[i]
        families.append(BallFamily([Cp[i] for i in keep], Cp.kind))
        remaining = rest
    target = _union(space, Cp)
    res = _result(space, target, families)

    if known_L is not None and known_D is not None:
        res.bound = known_L * known_D**6 + 1
        ok, pair = midpoint_spot_check(space, eps)
        res.midpoints_ok = ok
        if not ok:
            res.notes.append(f"midpoint check failed at pair {pair}; L*D^6+1 not asserted")
        if res.m > res.bound:
            msg = f"m={res.m} exceeds L*D^6+1 = {res.bound}"
            if ok:
                raise BoundViolated(msg)
            res.notes.append(msg)
    if diagnostic:
        res.inner_balls = _inner_ball_diagnostic(space, families, bits, Cp)
    return res


def _inner_ball_diagnostic(space, families, bits, Cp) -> list[dict]:
    """For each ball pushed out of an earlier family, look for a quarter-radius
    open ball inside it around the first point it shares with a kept ball."""
    pos = {}
    for i, b in enumerate(Cp):
        pos.setdefault(b, i)
    out = []
    for k in range(1, len(families)):
        for b in families[k]:
            mine = bits[pos[b]]
            blocker = next((c for c in families[k - 1] if bits[pos[c]] & mine), None)
            if blocker is None:
                continue
            shared = mine & bits[pos[blocker]]
            y = (shared & -shared).bit_length() - 1
            t = b.radius / 4
            entry = {"family": k, "ball": b.to_dict(), "blocker": blocker.to_dict(), "y": y,
                     "t": format_rational(t), "z": None}
            try:
                entry["z"] = find_inner_ball(space, b.center, b.radius, y, t)
            except PreconditionViolated:
                entry["skipped"] = "y not in the open ball"
            out.append(entry)
    return out


def find_inner_ball(space: FiniteMetricSpace, x: int, r, y: int, t) -> int | None:
    """Lowest ``z`` with ``y`` in ``B°(z, t)`` and ``B°(z, t)`` inside ``B°(x, r)``.

    Returns ``x`` directly when ``d(x, y) < t``.  ``None`` is a legitimate
    answer in spaces without approximate midpoints.
    """
    r, t = as_rational(r), as_rational(t)
    if not 0 < t < r:
        raise PreconditionViolated(f"need 0 < t < r, got t={t}, r={r}")
    outer = space.all_ball_masks(r, Kind.OPEN)[x]
    if not outer[y]:
        raise PreconditionViolated(f"point {y} is not in B°({x}, {format_rational(r)})")
    inner = space.all_ball_masks(t, Kind.OPEN)
    if inner[x, y]:
        return x
    # rows z whose t-ball holds y and has no point outside the outer ball
    ok = inner[:, y] & ~(inner & ~outer).any(axis=1)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None
