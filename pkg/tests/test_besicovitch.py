import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from besicover.besicovitch import (besicovitch_constant, bilipschitz_compare, intersecting_family_check,
                                   is_besicovitch_family, max_overlap)
from besicover.errors import NotUltrametric
from besicover.generators import (grid_index, make_grid_square, make_lattice, make_paper_ultrametric,
                                  make_points, make_random_ultrametric, make_zero_one)
from besicover.metric import Ball, Kind, critical_radii

from conftest import brute_members, point_spaces, ultrametric_spaces


def _oracle_L(space, pool, closed=True):
    """Per-point max clique with networkx, membership taken from the table."""
    balls = []
    seen = set()
    for c in range(space.n):
        for r in pool:
            m = frozenset(brute_members(space, c, r, closed))
            if (c, m) not in seen:
                seen.add((c, m))
                balls.append((c, m))
    best = 1
    for p in range(space.n):
        through = [b for b in balls if p in b[1]]
        G = nx.Graph()
        G.add_nodes_from(range(len(through)))
        for i, j in itertools.combinations(range(len(through)), 2):
            (ci, mi), (cj, mj) = through[i], through[j]
            if ci != cj and ci not in mj and cj not in mi:
                G.add_edge(i, j)
        if len(through):
            best = max(best, max(len(c) for c in nx.find_cliques(G)))
    return best


def test_besicovitch_family_depends_on_names():
    h = Fraction(1, 2)
    S = make_points([(Fraction(0),), (h,), (Fraction(1),), (Fraction(4),), (9 * h,), (Fraction(5),)], "linf")
    B2 = Ball(4, 4)
    assert is_besicovitch_family(S, [Ball(0, 2), B2])
    check = is_besicovitch_family(S, [Ball(2, 2), B2])
    assert not check and check.pair == (0, 1)


def test_duplicate_and_disjoint_families():
    L = make_lattice(1, 11, "linf")
    assert not is_besicovitch_family(L, [Ball(3, Fraction(1, 5)), Ball(3, Fraction(1, 5))])
    assert is_besicovitch_family(L, [Ball(0, Fraction(1, 10)), Ball(5, Fraction(1, 10))])
    assert max_overlap(L, [Ball(0, Fraction(1, 10)), Ball(5, Fraction(1, 10))]).max_overlap == 1


def test_overlap_on_nested_balls():
    N = 10
    X = make_paper_ultrametric(N)
    rep = max_overlap(X, [Ball(i - 1, 1 - Fraction(1, i)) for i in range(2, N + 1)])
    assert rep.max_overlap == N - 1
    assert rep.per_point[0] == rep.per_point[1] == N - 1
    assert rep.witness_point == 0


def test_grid_general_position_overlap():
    G = make_grid_square(7)
    fam = [Ball(grid_index(7, i, (3 * i) % 7), 1) for i in range(7)]
    assert max_overlap(G, fam).max_overlap <= 2


@given(ultrametric_spaces())
def test_ultrametric_constant_is_one(space):
    for kind in Kind:
        rep = besicovitch_constant(space, kind=kind)
        assert rep.L == 1 and rep.exact


def test_known_constants():
    assert besicovitch_constant(make_paper_ultrametric(20)).L == 1
    assert besicovitch_constant(make_grid_square(6), [1, 2]).L == 2
    L1 = make_lattice(1, 21, "linf")
    assert besicovitch_constant(L1, sorted(set(L1.values[1:]))).L == 2
    assert besicovitch_constant(make_zero_one(5)).L == 1


@given(point_spaces(max_n=7), st.sampled_from(list(Kind)))
def test_constant_matches_networkx_oracle(space, kind):
    pool = critical_radii(space)
    rep = besicovitch_constant(space, kind=kind)
    assert rep.L == _oracle_L(space, pool, kind is Kind.CLOSED)
    fam = rep.witness_family
    assert len(fam) == rep.L
    assert is_besicovitch_family(space, fam)
    assert all(space.contains(b, rep.witness_point) for b in fam)


@given(point_spaces(max_n=7), st.randoms(use_true_random=False))
def test_constant_is_invariant_under_relabelling(space, rnd):
    perm = list(range(space.n))
    rnd.shuffle(perm)
    assert besicovitch_constant(space.permuted(perm)).L == besicovitch_constant(space).L


def test_budget_exhaustion_gives_lower_bound():
    L2 = make_lattice(2, 7, "linf")
    rep = besicovitch_constant(L2, budget=1)
    assert rep.L >= 1
    assert rep.L <= besicovitch_constant(L2).L


def test_empty_pool_rejected():
    with pytest.raises(ValueError):
        besicovitch_constant(make_zero_one(3), [])


def test_intersecting_families_in_ultrametrics():
    X = make_paper_ultrametric(9)
    rng = random.Random(2)
    balls = [Ball(rng.randrange(9), Fraction(rng.randint(1, 10), 10)) for _ in range(40)]
    assert intersecting_family_check(X, balls)
    assert intersecting_family_check(X, [Ball(0, Fraction(1, 4)), Ball(5, Fraction(1, 4))])
    with pytest.raises(NotUltrametric):
        intersecting_family_check(make_lattice(1, 5, "linf"), [])


@given(ultrametric_spaces(), st.data())
def test_intersecting_pairs_nest(space, data):
    radii = list(space.values[1:]) or [Fraction(1)]
    balls = [Ball(data.draw(st.integers(0, space.n - 1)), data.draw(st.sampled_from(radii)))
             for _ in range(data.draw(st.integers(0, 12)))]
    assert intersecting_family_check(space, balls)


def test_bilipschitz_window():
    X = make_paper_ultrametric(12)
    Z = make_zero_one(12)
    w = bilipschitz_compare(Z, X)
    assert w.lower == Fraction(1, 2) and w.lower_pair == (0, 1)
    assert w.upper == 1 - Fraction(1, 12)
    same = bilipschitz_compare(X, X)
    assert same.lower == same.upper == 1
    tripled = bilipschitz_compare(X, X.scaled(3))
    assert tripled.lower == tripled.upper == 3
    with pytest.raises(ValueError):
        bilipschitz_compare(X, make_zero_one(3))
