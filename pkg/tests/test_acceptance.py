"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Every criterion records a line in the terminal summary ("criterion k: PASS
or FAIL"); sub-claims that can fail independently are separate tests.
"""

import random
import time
from fractions import Fraction

import numpy as np

from besicover.besicovitch import besicovitch_constant, bilipschitz_compare, max_overlap
from besicover.covering import besicovitch_cover, disjoint_rearrangement, equal_radius_cover, \
    localized_bound, localized_cover
from besicover.doubling import doubling_constant, doubling_number, maximal_net_cover, packing_bound_check, \
    scaled_cover
from besicover.errors import BoundViolated
from besicover.exact import ceil_neg_log2
from besicover.gallery import run_case
from besicover.generators import make_grid_square, make_lattice, make_paper_ultrametric, \
    make_random_ultrametric, make_zero_one
from besicover.metric import Ball, Kind, ball_members
from besicover.setcover import exact_set_cover

from conftest import record


def _check(name, rep):
    return next(c for c in rep.checks if c["name"] == name)


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_counter07():
    failures = []
    slowest = 0.0
    for N in range(4, 65):
        t0 = time.perf_counter()
        rep = run_case("counter07", N)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        ok = (_check("ultrametric", rep)["pass"] and _check("closed_ball_members", rep)["pass"]
              and rep.facts["overlap_at_point_2"] == N - 1 and dt < 1.0)
        if not ok:
            failures.append(N)
    assert record(1, not failures, f"N=4..64, overlap at 2 = N-1, slowest {slowest:.3f}s"
                  + (f", failing N {failures}" if failures else "")), failures


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_notSBCP():
    names = ["empty_triple_intersections", "general_position_overlap", "diagonal_pair_intersections",
             "subcover_overlap", "diagonal_equal_radius_m"]
    failures = []
    slowest = 0.0
    for N in range(4, 33):
        t0 = time.perf_counter()
        rep = run_case("notSBCP", N)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        ok = all(_check(n, rep)["pass"] for n in names) and rep.facts["equal_radius_m"] == N and dt < 5.0
        if not ok:
            failures.append((N, rep.failed(), round(dt, 2)))
    assert record(2, not failures, f"N=4..32, 50 seeded subsets each, slowest {slowest:.2f}s"
                  + (f", failing {failures}" if failures else "")), failures


# -- 3 -----------------------------------------------------------------------

_T3 = {"elapsed": 0.0}


def _timed_D(space, kind):
    t0 = time.perf_counter()
    rep = doubling_constant(space, kind, "exact")
    _T3["elapsed"] += time.perf_counter() - t0
    return rep


def test_criterion_3a_zero_one():
    bad = []
    for n in range(2, 33):
        for kind in Kind:
            rep = _timed_D(make_zero_one(n), kind)
            if rep.D != n or not rep.exact:
                bad.append((n, kind.value, rep.D))
    assert record(3, not bad, "0-1 space D = n for n=2..32" + (f" {bad}" if bad else "")), bad


def test_criterion_3b_line_open():
    rep = _timed_D(make_lattice(1, 21, "linf"), Kind.OPEN)
    assert record(3, rep.D == 3 and rep.exact, f"1-D lattice D^o = {rep.D} (expected 3)")


def test_criterion_3c_line_closed():
    rep = _timed_D(make_lattice(1, 21, "linf"), Kind.CLOSED)
    assert record(3, rep.D == 2 and rep.exact,
                  f"1-D lattice D^cl = {rep.D} (expected 2; witness {rep.witness_ball})"), rep.witness_ball


def test_criterion_3d_plane_closed():
    rep = _timed_D(make_lattice(2, 9, "linf"), Kind.CLOSED)
    assert record(3, rep.D == 4 and rep.exact,
                  f"2-D lattice side 9 D^cl = {rep.D} (expected 4; witness {rep.witness_ball})"), rep.witness_ball


def test_criterion_3e_plane_open():
    rep = _timed_D(make_lattice(2, 9, "linf"), Kind.OPEN)
    assert record(3, rep.D == 9 and rep.exact, f"2-D lattice side 9 D^o = {rep.D} (expected 9)")


def test_criterion_3f_total_time():
    assert record(3, _T3["elapsed"] < 30, f"total {_T3['elapsed']:.2f}s < 30s")


# -- 4 -----------------------------------------------------------------------


def _spaces_4():
    return [("1-D lattice", make_lattice(1, 21, "linf")), ("2-D lattice", make_lattice(2, 9, "linf")),
            ("grid_square(6)", make_grid_square(6)), ("0-1 space", make_zero_one(7)),
            ("nested ultrametric", make_paper_ultrametric(12))]


def test_criterion_4_covering_packing_chain():
    rng = random.Random(4)
    violations = []
    count = 0
    for name, S in _spaces_4():
        radii = sorted(set(S.values[1:]))
        for kind in Kind:
            N = doubling_constant(S, kind).D
            for _ in range(20):
                ball = Ball(rng.randrange(S.n), rng.choice(radii + [radii[-1] * 2]), kind)
                for t in (1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
                    count += 1
                    try:
                        sc = scaled_cover(S, ball, t, N)
                        if sc.count > N ** ceil_neg_log2(t):
                            violations.append((name, str(ball), str(t), "cover"))
                    except BoundViolated as exc:
                        violations.append((name, str(ball), str(t), str(exc)))
                    pk = packing_bound_check(S, ball, t, N)
                    if not pk.ok:
                        violations.append((name, str(ball), str(t), f"packing {pk.max_packing} > {pk.bound}"))
    assert record(4, not violations, f"{count} (ball, t) pairs over 5 spaces x 2 kinds, "
                  f"{len(violations)} violations"), violations[:5]


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_localized_bound():
    t0 = time.perf_counter()
    rng = random.Random(5)
    violations = []
    worst = {}
    for name, S in [("1-D lattice", make_lattice(1, 33, "linf")), ("2-D lattice", make_lattice(2, 9, "linf")),
                    ("grid_square(6)", make_grid_square(6))]:
        D = doubling_constant(S, Kind.CLOSED).D
        h = S.min_positive_distance
        for _ in range(50):
            ratio = rng.choice([1, 2, 3, 4, 8])
            r = h * rng.randint(1, 2) if name != "grid_square(6)" else Fraction(rng.choice([1, 2]), 2)
            R = r * ratio
            A = sorted(rng.sample(range(S.n), rng.randint(1, S.n)))
            C = [Ball(a, r + (R - r) * Fraction(rng.randint(0, 8), 8)) for a in A
                 for _ in range(rng.randint(1, 2))]
            res = localized_cover(S, A, C, r, R)
            bound = localized_bound(D, R / r)
            worst[name] = max(worst.get(name, 0), res.m)
            if res.m > bound or res.leftover:
                violations.append((name, ratio, res.m, bound))
    dt = time.perf_counter() - t0
    assert record(5, not violations and dt < 60,
                  f"150 instances, worst m {worst}, {len(violations)} violations, {dt:.2f}s"), violations[:5]


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_constants_chain():
    rng = random.Random(6)
    L1 = make_lattice(1, 21, "linf")
    D = doubling_constant(L1, Kind.CLOSED).D
    L = besicovitch_constant(L1, kind=Kind.CLOSED).L
    violations = []
    worst_ov = worst_m = 0
    for _ in range(50):
        A = sorted(rng.sample(range(L1.n), rng.randint(1, L1.n)))
        C = [Ball(a, Fraction(rng.randint(1, 10), 20)) for a in A for _ in range(rng.randint(1, 2))]
        bc = besicovitch_cover(L1, A, C)
        dr = disjoint_rearrangement(L1, bc.selected, known_L=L, known_D=D)
        worst_ov = max(worst_ov, bc.overlap.max_overlap)
        worst_m = max(worst_m, dr.m)
        if bc.overlap.max_overlap > L * D**3 or dr.m > L * D**6 + 1 or bc.leftover:
            violations.append((bc.overlap.max_overlap, dr.m))
    assert record(6, not violations, f"L={L}, D={D}: worst overlap {worst_ov} <= {L * D**3}, "
                  f"worst m {worst_m} <= {L * D**6 + 1}"), violations


# -- 7 -----------------------------------------------------------------------


def _ultra_ok(X, rng):
    if besicovitch_constant(X).L != 1:
        return False
    for r in X.values[1:] + (X.values[-1] + 1,):
        for A in (range(X.n), rng.sample(range(X.n), max(1, X.n // 2))):
            for kind in Kind:
                if equal_radius_cover(X, A, r, kind).m != 1:
                    return False
    return True


def test_criterion_7_ultrametric_suite():
    rng = random.Random(7)
    bad = [N for N in (4, 16, 32, 64) if not _ultra_ok(make_paper_ultrametric(N), rng)]
    nrng = np.random.default_rng(7)
    for k in range(50):
        X = make_random_ultrametric(int(nrng.integers(2, 65)), nrng)
        if not _ultra_ok(X, rng):
            bad.append(f"random #{k}")
    assert record(7, not bad, "X_N for N in {4,16,32,64} and 50 random dendrograms: L = 1, m = 1"
                  + (f", failing {bad}" if bad else "")), bad


# -- 8 -----------------------------------------------------------------------

_WINDOWS = {}


def _windows():
    if not _WINDOWS:
        for N in range(2, 257):
            _WINDOWS[N] = bilipschitz_compare(make_zero_one(N), make_paper_ultrametric(N))
    return _WINDOWS


def test_criterion_8a_window():
    bad = [N for N, w in _windows().items() if not (Fraction(1, 2) <= w.lower and w.upper <= 1)]
    assert record(8, not bad, "1/2 <= d_u/d <= 1 for N=2..256"), bad


def test_criterion_8b_lower_endpoint_attained():
    bad = [N for N, w in _windows().items() if w.lower != Fraction(1, 2)]
    assert record(8, not bad, "lower endpoint 1/2 attained (pair 1, 2) for every N"), bad


def test_criterion_8c_upper_endpoint_attained():
    w = _windows()
    bad = [N for N, v in w.items() if v.upper != 1]
    assert record(8, not bad, f"upper endpoint 1 attained: max ratio is 1 - 1/N "
                  f"(N=256: {w[256].upper})"), bad[:5]


# -- 9 -----------------------------------------------------------------------


def test_criterion_9a_greedy_dominates_exact():
    bad = []
    tested = 0
    for S in (make_lattice(1, 21, "linf"), make_lattice(2, 7, "linf"), make_grid_square(5),
              make_paper_ultrametric(10), make_zero_one(6)):
        for kind in Kind:
            ex = doubling_constant(S, kind, "exact")
            gr = doubling_constant(S, kind, "greedy")
            for a, b in zip(ex.per_ball, gr.per_ball):
                tested += 1
                if b.count < a.count:
                    bad.append(str(a.ball))
    assert record(9, not bad, f"greedy >= exact on {tested} balls"), bad[:5]


def test_criterion_9b_net_cover_dominates_minimum():
    rng = random.Random(9)
    bad = []
    tested = 0
    for S in (make_lattice(1, 21, "linf"), make_lattice(2, 7, "linf"), make_grid_square(5)):
        radii = sorted(set(S.values[1:]))
        for _ in range(30):
            kind = rng.choice(list(Kind))
            ball = Ball(rng.randrange(S.n), rng.choice(radii), kind)
            t = rng.choice([1, Fraction(1, 2), Fraction(1, 3)])
            nc = maximal_net_cover(S, ball, t)
            universe = S.ball_bits(ball)
            sol = exact_set_cover(universe, S.all_ball_bits(t * ball.radius, kind))
            tested += 1
            if not nc.covers or nc.count < sol.size or not sol.exact:
                bad.append((str(ball), str(t)))
    assert record(9, not bad, f"maximal-net cover >= exact minimum on {tested} balls"), bad


def test_criterion_9c_strict_gap_example():
    L = make_lattice(1, 21, "linf")
    ball = Ball(L.index_of("0"), 1, Kind.OPEN)
    centers = [L.index_of(str(Fraction(c, 10))) for c in (-6, -1, 4, 9)]
    nc = maximal_net_cover(L, ball, Fraction(1, 2), centers=centers)
    minimum = doubling_number(L, ball)
    ok = nc.covers and nc.count == 4 and minimum.count == 3 and minimum.exact
    assert record(9, ok, f"net {{-6/10, -1/10, 4/10, 9/10}} gives {nc.count} > minimum {minimum.count}")
