"""
Nested balls in an ultrametric
==============================

Points 1..N with d(i, j) = 1 - 1/max(i, j).  The closed balls
B(i, 1 - 1/i) = {1, ..., i} are nested, so every point 1 or 2 sits in all
of them.  A finite truncation still has a one-ball subcover, but the
overlap of the full family grows with N.
"""

from fractions import Fraction

from besicover import Ball, besicovitch_constant, besicovitch_cover, make_paper_ultrametric, max_overlap
from besicover.metric import ball_members

N = 12
X = make_paper_ultrametric(N)
print(X)

# point with label i lives at index i - 1
family = [Ball(i - 1, 1 - Fraction(1, i)) for i in range(2, N + 1)]
for b in family[:4]:
    print(b, "->", sorted(X.labels[p] for p in ball_members(X, b)))

ov = max_overlap(X, family)
print("overlap at point 2:", ov.per_point[1])  # N - 1

# balls through a common point nest, so no two of them form a Besicovitch pair
print("L =", besicovitch_constant(X).L)

# the cover keeps the single largest ball
out = besicovitch_cover(X, range(1, N), family)
print("selected:", list(map(str, out.selected)), "overlap", out.overlap.max_overlap)

for n in (4, 16, 64):
    Xn = make_paper_ultrametric(n)
    fam = [Ball(i - 1, 1 - Fraction(1, i)) for i in range(2, n + 1)]
    print(n, max_overlap(Xn, fam).per_point[1])
