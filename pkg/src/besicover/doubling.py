"""Doubling numbers and constants, and the covering/packing chain between them.

``doubling_number`` covers one ball by half-radius balls of the same kind
(centers anywhere in the space).  ``doubling_constant`` maximises it over
every center and every radius configuration.  The remaining functions check
the quantitative consequences of a doubling bound ``N``: iterated halving
gives covers by ``t*r``-balls of size at most ``N**ceil(-log2 t)``; disjoint
``t*r/2``-balls centered in a ball number at most ``N**ceil(-log2(t/2))``;
and the ``t*r``-balls around a maximal such disjoint family cover the ball.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .clique import max_independent_set
from .errors import BoundViolated, PreconditionViolated
from .exact import as_rational, ceil_neg_log2, format_rational
from .metric import Ball, BallFamily, FiniteMetricSpace, Kind, bits_to_set, critical_radii
from .setcover import exact_set_cover, greedy_set_cover

__all__ = [
    "Method",
    "DoublingNumber",
    "DoublingReport",
    "doubling_number",
    "doubling_constant",
    "doubling_radii",
    "ScaledCover",
    "scaled_cover",
    "PackingReport",
    "packing_bound_check",
    "NetCover",
    "maximal_net_cover",
]

# exact searches expanding more nodes than this fall back to the greedy bound,
# as do balls with more points than MAX_EXACT_SIZE
SETCOVER_BUDGET = 200_000
MAX_EXACT_SIZE = 1024


class Method(str, Enum):
    EXACT = "exact"
    GREEDY = "greedy"

    @classmethod
    def coerce(cls, m) -> "Method":
        return m if isinstance(m, cls) else cls(str(m).lower())


@dataclass(frozen=True)
class DoublingNumber:
    ball: Ball
    count: int
    centers: tuple[int, ...]
    exact: bool
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {"ball": self.ball.to_dict(), "count": self.count, "centers": list(self.centers),
                "exact": self.exact, "degenerate": self.degenerate}


@dataclass
class DoublingReport:
    D: int
    kind: Kind
    method: str
    witness_ball: Ball | None
    per_ball: list[DoublingNumber] = field(repr=False, default_factory=list)
    radii: list[Fraction] = field(repr=False, default_factory=list)

    @property
    def exact(self) -> bool:
        return self.method == "exact"

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "kind": self.kind.value,
            "method": self.method,
            "witness_ball": self.witness_ball.to_dict() if self.witness_ball else None,
            "radii": [format_rational(r) for r in self.radii],
            "per_ball": [d.to_dict() for d in self.per_ball],
        }


def _solve(universe: int, cands: list[int], method: Method, budget: int) -> tuple[list[int], bool]:
    if method is Method.GREEDY or universe.bit_count() > MAX_EXACT_SIZE:
        return sorted(greedy_set_cover(universe, cands)), False
    sol = exact_set_cover(universe, cands, budget)
    return sol.chosen, sol.exact


def doubling_number(space: FiniteMetricSpace, ball: Ball, method="exact",
                    budget: int = SETCOVER_BUDGET) -> DoublingNumber:
    """Fewest balls of radius ``ball.radius / 2`` (same kind) covering ``ball``.

    ``method="greedy"`` returns the largest-gain cover (an upper bound, ties
    broken by lowest center index).  ``exact`` is ``True`` only when the count
    is a certified minimum.
    """
    method = Method.coerce(method)
    universe = space.ball_bits(ball)
    if universe.bit_count() == 1:
        return DoublingNumber(ball, 1, (ball.center,), True, degenerate=True)
    cands = space.all_ball_bits(ball.radius / 2, ball.kind)
    chosen, exact = _solve(universe, cands, method, budget)
    return DoublingNumber(ball, len(chosen), tuple(chosen), exact)


def doubling_radii(space: FiniteMetricSpace) -> list[Fraction]:
    """Radii realising every (ball, half-ball) configuration of the space."""
    return critical_radii(space, factors=(1, Fraction(1, 2)))


def doubling_constant(space: FiniteMetricSpace, kind="closed", method="exact", radii=None,
                      budget: int = SETCOVER_BUDGET, threads: int = 1) -> DoublingReport:
    """Maximum doubling number over all centers and radii.

    By default the radii come from :func:`doubling_radii`, which makes the
    maximum the true doubling constant of the finite space.  Passing
    ``radii`` restricts the maximum to those scales.
    """
    kind = Kind.coerce(kind)
    method = Method.coerce(method)
    if space.n == 0:
        raise PreconditionViolated("empty space")
    radii = sorted({as_rational(r) for r in (doubling_radii(space) if radii is None else radii)})

    jobs = []
    keys = {}
    for r in radii:
        big = space.all_ball_bits(r, kind)
        half_k = space.threshold(r / 2, kind)
        for c in range(space.n):
            key = (big[c], half_k)
            jobs.append((Ball(c, r, kind), key))
            keys.setdefault(key, (big[c], r))

    half_cache: dict = {}

    def solve(key):
        universe, r = keys[key]
        if universe.bit_count() == 1:
            c = universe.bit_length() - 1
            return (c,), True, True
        if key[1] not in half_cache:
            half_cache[key[1]] = space.all_ball_bits(r / 2, kind)
        chosen, exact = _solve(universe, half_cache[key[1]], method, budget)
        return tuple(chosen), exact, False

    uniq = list(keys)
    if threads > 1:
        for k in uniq:  # fill the half-ball cache deterministically first
            _, r = keys[k]
            half_cache.setdefault(k[1], space.all_ball_bits(r / 2, kind))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = dict(zip(uniq, pool.map(solve, uniq)))
    else:
        results = {k: solve(k) for k in uniq}

    per_ball = []
    for ball, key in jobs:
        chosen, exact, degen = results[key]
        if degen:
            chosen = (ball.center,)
        per_ball.append(DoublingNumber(ball, len(chosen), chosen, exact, degen))
    D = max(d.count for d in per_ball)
    witness = next(d.ball for d in per_ball if d.count == D)
    all_exact = all(d.exact for d in per_ball)
    label = "exact" if (method is Method.EXACT and all_exact) else "greedy_upper_bound"
    return DoublingReport(D, kind, label, witness, per_ball, radii)


# ---------------------------------------------------------------------------
# consequences of a doubling bound


@dataclass
class ScaledCover:
    ball: Ball
    t: Fraction
    halvings: int
    bound: int
    balls: BallFamily

    @property
    def count(self) -> int:
        return len(self.balls)

    def to_dict(self) -> dict:
        return {"ball": self.ball.to_dict(), "t": format_rational(self.t), "halvings": self.halvings,
                "bound": self.bound, "count": self.count, "balls": self.balls.to_list()}


def _check_t(t) -> Fraction:
    t = as_rational(t)
    if not 0 < t <= 1:
        raise PreconditionViolated(f"t must lie in (0, 1], got {t}")
    return t


def scaled_cover(space: FiniteMetricSpace, ball: Ball, t, N: int, method="exact",
                 budget: int = SETCOVER_BUDGET) -> ScaledCover:
    """Cover ``ball`` by balls of radius ``t*r`` through repeated halving.

    With ``k = ceil(-log2 t)``, each of ``k`` rounds replaces every ball by at
    most ``N`` balls of half its radius; the final centers are then named with
    radius ``t*r`` (``2**-k <= t``, so coverage is preserved).  Raises
    :class:`BoundViolated` if some round needs more than ``N`` balls, which
    means ``N`` is not a doubling bound for the space.
    """
    t = _check_t(t)
    k = ceil_neg_log2(t)
    bound = N**k
    target = space.ball_bits(ball)
    current = [ball]
    for _ in range(k):
        nxt: dict[int, Ball] = {}
        for b in current:
            dn = doubling_number(space, b, method, budget)
            if dn.count > N:
                raise BoundViolated(f"{b} needs {dn.count} > N={N} half-radius balls"
                                    + ("" if dn.exact else " (greedy count)"))
            for c in dn.centers:
                nxt.setdefault(c, Ball(c, b.radius / 2, b.kind))
        current = [nxt[c] for c in sorted(nxt)]
    if k == 0:
        family = BallFamily([ball])
    else:
        family = BallFamily([Ball(b.center, t * ball.radius, ball.kind) for b in current])
    union = 0
    for b in family:
        union |= space.ball_bits(b)
    if target & ~union:
        raise AssertionError("halving construction failed to cover the ball")
    if len(family) > bound:
        raise BoundViolated(f"cover of size {len(family)} exceeds N^{k} = {bound}")
    return ScaledCover(ball, t, k, bound, family)


@dataclass
class PackingReport:
    ball: Ball
    t: Fraction
    max_packing: int
    bound: int
    exact: bool
    centers: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.max_packing <= self.bound

    def to_dict(self) -> dict:
        return {"ball": self.ball.to_dict(), "t": format_rational(self.t), "max_packing": self.max_packing,
                "bound": self.bound, "exact": self.exact, "ok": self.ok, "centers": list(self.centers)}


def _small_ball_bits(space, members, radius, kind):
    rows = space.all_ball_masks(radius, kind)[members]
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def packing_bound_check(space: FiniteMetricSpace, ball: Ball, t, N: int,
                        budget: int = 10**6) -> PackingReport:
    """Largest family of points of ``ball`` whose ``t*r/2``-balls are pairwise disjoint.

    Solved exactly as a maximum independent set in the intersection graph;
    if the search budget runs out the result is a lower bound
    (``exact=False``).
    """
    t = _check_t(t)
    bound = N ** ceil_neg_log2(t / 2)
    members = np.flatnonzero(space.ball_mask(ball)).tolist()
    small = _small_ball_bits(space, members, t * ball.radius / 2, ball.kind)
    m = len(members)
    adj = [sum(1 << j for j in range(m) if j != i and small[i] & small[j]) for i in range(m)]
    res = max_independent_set(adj, budget)
    centers = tuple(members[i] for i in res.nodes)
    return PackingReport(ball, t, res.size, bound, res.exact, centers)


@dataclass
class NetCover:
    ball: Ball
    t: Fraction
    centers: tuple[int, ...]
    balls: BallFamily
    covers: bool

    @property
    def count(self) -> int:
        return len(self.balls)


def maximal_net_cover(space: FiniteMetricSpace, ball: Ball, t, centers=None) -> NetCover:
    """Cover ``ball`` by ``t*r``-balls centered at a maximal family of points
    of ``ball`` whose ``t*r/2``-balls are pairwise disjoint.

    The family is built greedily in index order unless ``centers`` is given,
    in which case it is checked for disjointness and maximality first.
    """
    t = _check_t(t)
    r = ball.radius
    members = np.flatnonzero(space.ball_mask(ball)).tolist()
    small = dict(zip(members, _small_ball_bits(space, members, t * r / 2, ball.kind)))
    if centers is None:
        chosen, used = [], 0
        for p in members:
            if not small[p] & used:
                chosen.append(p)
                used |= small[p]
    else:
        chosen = sorted(set(int(c) for c in centers))
        used = 0
        for c in chosen:
            if c not in small:
                raise PreconditionViolated(f"center {c} is not in {ball}")
            if small[c] & used:
                raise PreconditionViolated("given centers do not have disjoint t*r/2-balls")
            used |= small[c]
        free = [p for p in members if not small[p] & used]
        if free:
            raise PreconditionViolated(f"given family is not maximal: point {free[0]} could be added")
    family = BallFamily([Ball(c, t * r, ball.kind) for c in chosen])
    union = 0
    for b in family:
        union |= space.ball_bits(b)
    target = space.ball_bits(ball)
    return NetCover(ball, t, tuple(chosen), family, not (target & ~union))


def covered_points(space: FiniteMetricSpace, family) -> frozenset[int]:
    union = 0
    for b in family:
        union |= space.ball_bits(b)
    return bits_to_set(union)
