"""
The row/column metric on a grid
===============================

Two points are at distance 1 when they share a row or a column, otherwise
at distance 2.  Unit balls are crosses.  Three crosses with centers in
general position never share a point, yet two always meet in two points,
so an equal-radius cover of the diagonal needs one family per ball.
"""

import random
from fractions import Fraction

from besicover import Ball, equal_radius_cover, make_grid_square, max_overlap
from besicover.gallery import grid_square_subcover
from besicover.generators import grid_index
from besicover.metric import ball_members

N = 6
G = make_grid_square(N)

a = ball_members(G, Ball(grid_index(N, 1, 1), 1))
b = ball_members(G, Ball(grid_index(N, 4, 4), 1))
print("B((1,1),1) & B((4,4),1) =", sorted(G.labels[p] for p in a & b))

diag = [grid_index(N, j, j) for j in range(N)]
res = equal_radius_cover(G, diag, 1)
print("families needed for the diagonal:", res.m)

# a bounded-overlap subcover always exists though
rng = random.Random(0)
A = sorted(rng.sample(range(N * N), 20))
C = [Ball(p, rng.choice([Fraction(1, 2), Fraction(1)])) for p in A]
sub = grid_square_subcover(G, A, C)
counts = max_overlap(G, sub).per_point
print(len(sub), "balls kept, min count on A", counts[A].min(), "max overlap", counts.max())
