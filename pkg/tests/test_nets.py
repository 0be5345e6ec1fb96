from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from besicover.generators import make_lattice, make_paper_ultrametric
from besicover.nets import Net, greedy_maximal_net, is_maximal, net_ball_duality, verify_net

from conftest import point_spaces


def test_greedy_net_on_a_lattice():
    L = make_lattice(1, 21, "linf")
    net = greedy_maximal_net(L, range(L.n), Fraction(1, 2), strict=False)
    assert net.points == (0, 5, 10, 15, 20)
    strict = greedy_maximal_net(L, range(L.n), Fraction(1, 2), strict=True)
    assert strict.points == (0, 6, 12, 18)


@given(point_spaces(), st.fractions(Fraction(1, 2), 6), st.booleans())
def test_greedy_net_is_a_maximal_net(space, r, strict):
    net = greedy_maximal_net(space, range(space.n), r, strict)
    assert verify_net(space, net)
    assert is_maximal(space, net)
    for i in net.points:
        for j in net.points:
            if i < j:
                d = space.true_distance(i, j) if not space.squared else None
                if d is not None:
                    assert (d > r) if strict else (d >= r)


@given(point_spaces(), st.fractions(Fraction(1, 2), 6))
def test_greedy_net_is_deterministic(space, r):
    a = greedy_maximal_net(space, range(space.n), r, False)
    b = greedy_maximal_net(space, reversed(range(space.n)), r, False)
    assert a == b


def test_verify_net_reports_the_bad_pair():
    L = make_lattice(1, 5, "linf")
    check = verify_net(L, Net((0, 1, 4), Fraction(1), strict=False))
    assert not check and check.pair == (0, 1)
    assert Net.from_dict(Net((0, 4), Fraction(1), True).to_dict()).points == (0, 4)


@given(point_spaces(max_n=8), st.fractions(Fraction(1, 2), 6))
def test_nets_have_disjoint_half_balls(space, r):
    net = greedy_maximal_net(space, range(space.n), r, False)
    rep = net_ball_duality(space, net.points, r, Fraction(1, 10))
    assert rep.is_net and rep.balls_disjoint and rep.forward_ok


def test_duality_reverse_direction_depends_on_midpoints():
    L = make_lattice(1, 21, "linf")
    # 0 and 2 are 1/5 apart: not a 1/2-net; the midpoint 1 sits in both open 1/4-balls
    rep = net_ball_duality(L, [0, 2], Fraction(1, 2), Fraction(1, 10))
    assert not rep.is_net and rep.reverse_witness == (0, 2, 1)
    X = make_paper_ultrametric(6)
    # d(5,6) = 5/6 < 1: not a 1-net, but open 1/2-balls around 5 and 6 are singletons
    rep = net_ball_duality(X, [4, 5], 1, Fraction(1, 100))
    assert not rep.is_net and rep.balls_disjoint
    assert rep.net_violated_without_ball_witness
