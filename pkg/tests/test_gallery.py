import random

import pytest

from besicover.errors import PreconditionViolated, UnknownCase
from besicover.gallery import CASES, grid_square_subcover, run_case
from besicover.generators import make_grid_square
from besicover.besicovitch import max_overlap


@pytest.mark.parametrize("case", sorted(CASES))
def test_every_case_passes(case):
    rep = run_case(case, 8)
    assert rep.all_pass, rep.failed()
    assert rep.checks and all({"name", "pass", "detail"} <= set(c) for c in rep.checks)


def test_documented_outcomes():
    assert run_case("discrete", 7).facts["D"] == 7
    assert run_case("counter07", 10).facts["overlap_at_point_2"] == 9
    assert run_case("notSBCP", 6).facts["equal_radius_m"] == 6


def test_overlap_grows_with_truncation():
    assert [run_case("counter07", N).facts["overlap_at_point_2"] for N in range(4, 65, 12)] == \
        [N - 1 for N in range(4, 65, 12)]


def test_equal_radius_m_grows_linearly():
    assert [run_case("notSBCP", N).facts["equal_radius_m"] for N in (4, 8, 12)] == [4, 8, 12]


def test_unknown_case_and_small_N():
    with pytest.raises(UnknownCase):
        run_case("heisenberg", 8)
    with pytest.raises(PreconditionViolated):
        run_case("counter07", 3)


def test_grid_subcover_shortcut_and_leftovers():
    G = make_grid_square(4)
    from besicover.metric import Ball
    from fractions import Fraction
    assert list(grid_square_subcover(G, [0, 5], [Ball(0, 2), Ball(5, 1)])) == [Ball(0, 2)]
    sub = grid_square_subcover(G, [0, 5], [Ball(0, Fraction(1, 2)), Ball(5, Fraction(1, 2))])
    assert len(sub) == 2
    rng = random.Random(0)
    A = sorted(rng.sample(range(16), 9))
    C = [Ball(a, rng.choice([Fraction(1, 2), 1])) for a in A] + [Ball(a, Fraction(1, 3)) for a in A]
    counts = max_overlap(G, grid_square_subcover(G, A, C)).per_point
    assert counts[A].min() >= 1 and counts.max() <= 2
