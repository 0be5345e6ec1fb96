"""
From doubling to disjoint families
==================================

On a 1-D lattice: compute D and L exactly, cover a random set with a
random centered family, keep a bounded-overlap subfamily generation by
generation, then split it into disjoint families.
"""

import random
from fractions import Fraction

from besicover import (Ball, besicovitch_constant, besicovitch_cover, disjoint_rearrangement,
                       doubling_constant, localized_cover, make_lattice)

S = make_lattice(1, 41, "linf")
D = doubling_constant(S, "closed").D
L = besicovitch_constant(S).L
print("D =", D, " L =", L)

rng = random.Random(1)
A = sorted(rng.sample(range(S.n), 25))
C = [Ball(a, Fraction(rng.randint(1, 12), 40)) for a in A]

loc = localized_cover(S, A, C, known_D=D)
print("localized: m =", loc.m, "bound", loc.bound)

bc = besicovitch_cover(S, A, C, known_L=L, known_C=D**3)
for g in bc.buckets:
    print(f"  generation {g.n}: radii in ({g.lower}, {g.upper}], {len(g.targets)} targets, m={g.m}")
print("kept", len(bc.selected), "of", len(C), "balls; overlap", bc.overlap.max_overlap, "<=", L * D**3)

dr = disjoint_rearrangement(S, bc.selected, known_L=L, known_D=D)
print("disjoint families:", dr.m, "<=", dr.bound, "midpoint check", dr.midpoints_ok)
