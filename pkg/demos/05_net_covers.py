"""
Covers from maximal nets are not minimal
========================================

On (-1, 1) sampled at spacing 1/10, the radius-1/2 balls around the
maximal 1/2-net {-6/10, -1/10, 4/10, 9/10} cover B(0, 1), but three such
balls already suffice.
"""

from fractions import Fraction

from besicover import Ball, doubling_number, make_lattice, maximal_net_cover
from besicover.nets import greedy_maximal_net

S = make_lattice(1, 21, "linf")
ball = Ball(S.index_of("0"), 1, "open")

net = [S.index_of(str(Fraction(c, 10))) for c in (-6, -1, 4, 9)]
nc = maximal_net_cover(S, ball, Fraction(1, 2), centers=net)
print("net cover:", [S.labels[c] for c in nc.centers], "covers:", nc.covers)

best = doubling_number(S, ball)
print("minimum:", [S.labels[c] for c in best.centers], best.count)

g = greedy_maximal_net(S, range(S.n), Fraction(1, 2), strict=False)
print("greedy 1/2-net of the whole lattice:", [S.labels[p] for p in g.points])
