"""Named, machine-checked reproductions of the finite claims behind the
classic examples: the nested ultrametric, the row/column metric on a grid,
the discrete 0-1 space, equal-radius covers in ultrametric spaces, and the
constants chain on lattices.

Infinite-space failures cannot be observed on a finite truncation; where a
claim is about unbounded behaviour the check records the finite shadow
(a count that equals ``N - 1`` or ``N`` for the truncation size ``N``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .besicovitch import besicovitch_constant, is_besicovitch_family, max_overlap
from .covering import besicovitch_cover, disjoint_rearrangement, equal_radius_cover
from .doubling import doubling_constant
from .errors import PreconditionViolated, UnknownCase
from .generators import grid_index, make_grid_square, make_lattice, make_paper_ultrametric, \
    make_random_ultrametric, make_zero_one
from .metric import Ball, BallFamily, FiniteMetricSpace, Kind, ball_members, is_ultrametric, validate_metric

__all__ = ["GalleryReport", "CASES", "run_case", "grid_square_subcover"]


@dataclass
class GalleryReport:
    case_id: str
    N: int
    checks: list[dict] = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def check(self, name: str, ok, detail: str = "") -> bool:
        self.checks.append({"name": name, "pass": bool(ok), "detail": detail})
        return bool(ok)

    def failed(self) -> list[str]:
        return [c["name"] for c in self.checks if not c["pass"]]

    def to_dict(self) -> dict:
        return {"case_id": self.case_id, "N": self.N, "all_pass": self.all_pass,
                "checks": list(self.checks), "facts": dict(self.facts)}


def _fmt(points, space) -> str:
    return "{" + ", ".join(space.labels[p] for p in sorted(points)) + "}"


# ---------------------------------------------------------------------------


def _counter07(N: int, seed: int) -> GalleryReport:
    rep = GalleryReport("counter07", N)
    X = make_paper_ultrametric(N)
    u = is_ultrametric(X)
    rep.check("ultrametric", u, "strong triangle inequality on all triples" if u else f"witness {u.witness}")

    # point with label i has index i - 1
    closed = [Ball(i - 1, 1 - Fraction(1, i)) for i in range(2, N + 1)]
    members = [ball_members(X, b) for b in closed]
    bad = [i for i, m in zip(range(2, N + 1), members) if m != frozenset(range(i))]
    rep.check("closed_ball_members", not bad,
              f"B^cl(i, 1-1/i) = {{1..i}} for 2 <= i <= {N}" if not bad else f"fails for i = {bad}")

    nested = all(a <= b for a, b in zip(members, members[1:]))
    rep.check("nesting_chain", nested, "B(2) within B(3) within ... within B(N)")

    common = frozenset.intersection(*members)
    rep.check("common_pair", {0, 1} <= common, f"intersection of all balls = {_fmt(common, X)}")

    ov = max_overlap(X, closed)
    at2 = int(ov.per_point[1])
    rep.facts["overlap_at_point_2"] = at2
    rep.check("overlap_at_2", at2 == N - 1 and ov.max_overlap == N - 1,
              f"{at2} balls contain point 2 (N-1 = {N - 1}); grows without bound in N")

    opened = [Ball(i - 1, 1 - 1 / (i + Fraction(1, 2**i)), Kind.OPEN) for i in range(2, N + 1)]
    same = all(ball_members(X, o) == m for o, m in zip(opened, members))
    rep.check("open_variant_same_sets", same, "open radii 1 - 1/(i + 2^-i) give the same member sets")
    return rep


def grid_square_subcover(space: FiniteMetricSpace, A, C) -> BallFamily:
    """Bounded-overlap subcover for the row/column metric.

    A ball of radius at least 2 is the whole space and is returned alone.
    Otherwise radius-1 balls (any radius in ``[1, 2)`` has the same members)
    are taken greedily in lexicographic order of their centers, skipping
    centers already covered; every point of ``A`` still uncovered then keeps
    one of its own sub-unit balls, which are singletons.
    """
    C = BallFamily(C)
    A = sorted(set(A))
    big = [b for b in C if b.radius >= 2]
    if big:
        return BallFamily([big[0]], C.kind)
    unit = sorted((b for b in C if b.radius >= 1), key=lambda b: b.center)
    chosen = []
    covered = np.zeros(space.n, dtype=bool)
    for b in unit:
        if not covered[b.center]:
            chosen.append(b)
            covered |= space.ball_mask(b)
    small = {}
    for b in C:
        if b.radius < 1:
            small.setdefault(b.center, b)
    for y in A:
        if not covered[y]:
            chosen.append(small[y])
    return BallFamily(chosen, C.kind)


def _random_grid_cover(N: int, rng: random.Random):
    """Random subset of the grid with a centered cover, radii in (0, 2]."""
    n = N * N
    A = sorted(rng.sample(range(n), rng.randint(1, n)))
    radii = [Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(3, 2)]
    C = []
    for a in A:
        for _ in range(rng.randint(1, 2)):
            C.append(Ball(a, rng.choice(radii)))
    if rng.random() < 0.05:
        C.append(Ball(rng.choice(A), 2))
    return A, C


def _triangle_free_per_point(space: FiniteMetricSpace, N: int) -> tuple[bool, int | None]:
    """For each point, the unit balls through it whose centers are pairwise in
    general position never include three mutually general-position centers."""
    xs, ys = np.divmod(np.arange(space.n), N)
    general = (xs[:, None] != xs[None, :]) & (ys[:, None] != ys[None, :])
    unit = space.all_ball_masks(1, Kind.CLOSED)
    for p in range(space.n):
        idx = np.flatnonzero(unit[:, p])
        g = general[np.ix_(idx, idx)].astype(np.int64)
        if ((g @ g) * g).any():  # some edge closes a triangle
            return False, p
    return True, None


def _notSBCP(N: int, seed: int) -> GalleryReport:
    rep = GalleryReport("notSBCP", N)
    G = make_grid_square(N)
    v = validate_metric(G)
    rep.check("metric_valid", v, "d <= 2 <= d(x,z) + d(z,y) for distinct triples" if v else v.reason)

    ok, p = _triangle_free_per_point(G, N)
    rep.check("empty_triple_intersections", ok,
              "no point lies in three unit balls with centers in general position"
              if ok else f"point {G.labels[p]} does")

    rng = random.Random(seed)
    worst = 0
    for _ in range(50):
        k = rng.randint(1, N)
        xs = rng.sample(range(N), k)
        ys = rng.sample(range(N), k)
        fam = [Ball(grid_index(N, x, y), 1) for x, y in zip(xs, ys)]
        worst = max(worst, max_overlap(G, fam).max_overlap)
    rep.check("general_position_overlap", worst <= 2,
              f"max overlap {worst} over 50 random general-position unit-ball families")

    bad = []
    for i in range(N):
        for j in range(i + 1, N):
            a = ball_members(G, Ball(grid_index(N, i, i), 1))
            b = ball_members(G, Ball(grid_index(N, j, j), 1))
            if a & b != {grid_index(N, i, j), grid_index(N, j, i)}:
                bad.append((i, j))
    rep.check("diagonal_pair_intersections", not bad,
              "B((i,i),1) and B((j,j),1) meet exactly in {(i,j),(j,i)}" if not bad else f"fails for {bad[:3]}")

    worst_lo, worst_hi = None, 0
    for _ in range(50):
        A, C = _random_grid_cover(N, rng)
        sub = grid_square_subcover(G, A, C)
        counts = max_overlap(G, sub).per_point
        lo = int(counts[A].min())
        worst_lo = lo if worst_lo is None else min(worst_lo, lo)
        worst_hi = max(worst_hi, int(counts.max()))
    rep.check("subcover_overlap", worst_lo >= 1 and worst_hi <= 2,
              f"over 50 random covers: min count on A = {worst_lo}, max overlap = {worst_hi}")

    diag = [grid_index(N, j, j) for j in range(N)]
    er = equal_radius_cover(G, diag, 1, Kind.CLOSED)
    rep.facts["equal_radius_m"] = er.m
    rep.check("diagonal_equal_radius_m", er.m == N,
              f"equal-radius cover of the diagonal needs m = {er.m} families (N = {N}); grows linearly in N")
    return rep


def _discrete(n: int, seed: int) -> GalleryReport:
    rep = GalleryReport("discrete", n)
    Z = make_zero_one(n)
    rep.check("ultrametric", is_ultrametric(Z), "0-1 metric")
    big = all(len(ball_members(Z, Ball(c, Fraction(3, 2), Kind.OPEN))) == n for c in range(n))
    rep.check("large_ball_is_space", big, "every open ball of radius > 1 is the whole space")
    small = all(ball_members(Z, Ball(c, r, Kind.OPEN)) == {c}
                for c in range(n) for r in (Fraction(1, 2), Fraction(1)))
    rep.check("small_balls_disjoint", small, "open balls of radius <= 1 are singletons, hence disjoint")
    d = doubling_constant(Z, Kind.OPEN)
    rep.facts["D"] = d.D
    rep.check("doubling_constant", d.D == n and d.exact, f"D = {d.D} ({d.method}), n = {n}")
    return rep


def _eqrad_ultra(N: int, seed: int) -> GalleryReport:
    rep = GalleryReport("eqrad_ultra", N)
    rng = np.random.default_rng(seed)
    worst = 0
    disjoint = True
    for trial in range(20):
        X = make_random_ultrametric(int(rng.integers(2, N + 1)), rng)
        pts = np.flatnonzero(rng.random(X.n) < 0.6).tolist() or [0]
        r = X.values[int(rng.integers(1, len(X.values)))] if len(X.values) > 1 else Fraction(1)
        for kind in Kind:
            res = equal_radius_cover(X, pts, r, kind)
            worst = max(worst, res.m)
            fam = res.families[0]
            disjoint &= is_besicovitch_family(X, fam).ok and max_overlap(X, fam).max_overlap == 1
    rep.check("single_family", worst == 1, f"largest m over 40 random instances: {worst}")
    rep.check("chosen_balls_disjoint", disjoint,
              "chosen balls exclude each other's centers and are pairwise disjoint")
    return rep


def _random_cover(space: FiniteMetricSpace, rng: random.Random, radii):
    A = sorted(rng.sample(range(space.n), rng.randint(1, space.n)))
    return A, [Ball(a, rng.choice(radii)) for a in A]


def _constants_chain(N: int, seed: int) -> GalleryReport:
    rep = GalleryReport("constants_chain", N)
    rng = random.Random(seed)
    spaces = [("1-D lattice", make_lattice(1, N, "linf")), ("2-D lattice", make_lattice(2, min(N, 9), "linf"))]
    for name, S in spaces:
        D = doubling_constant(S, Kind.CLOSED).D
        L = besicovitch_constant(S, kind=Kind.CLOSED).L
        rep.facts[name] = {"D": D, "L": L}
        h = S.min_positive_distance
        radii = [h * k for k in range(1, 6)]
        worst_ov, worst_m = 0, 0
        for _ in range(10):
            A, C = _random_cover(S, rng, radii)
            bc = besicovitch_cover(S, A, C)
            dr = disjoint_rearrangement(S, bc.selected)
            worst_ov = max(worst_ov, bc.overlap.max_overlap)
            worst_m = max(worst_m, dr.m)
        rep.check(f"{name}: overlap <= L*D^3", worst_ov <= L * D**3,
                  f"max overlap {worst_ov}, L = {L}, D = {D}, bound {L * D**3}")
        rep.check(f"{name}: m <= L*D^6+1", worst_m <= L * D**6 + 1,
                  f"max m {worst_m}, bound {L * D**6 + 1}")
    return rep


CASES = {
    "counter07": (_counter07, 4),
    "notSBCP": (_notSBCP, 4),
    "discrete": (_discrete, 2),
    "eqrad_ultra": (_eqrad_ultra, 2),
    "constants_chain": (_constants_chain, 4),
}


def run_case(case_id: str, N: int = 16, seed: int = 0) -> GalleryReport:
    try:
        fn, min_n = CASES[case_id]
    except KeyError:
        raise UnknownCase(f"unknown gallery case {case_id!r}; choose from {sorted(CASES)}") from None
    if N < min_n:
        raise PreconditionViolated(f"case {case_id} needs N >= {min_n}")
    return fn(N, seed)
