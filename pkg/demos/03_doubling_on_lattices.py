"""
Doubling constants of lattices
==============================

On a grid with spacing h the ball of radius h is a 3-point (or 3x3) block
while the half-radius balls are single points, so once every radius is
allowed the closed and open constants coincide at 3^d.  Restricting to
radii that are even multiples of the spacing recovers the familiar 2^d for
closed balls.
"""

from fractions import Fraction

from besicover import doubling_constant, make_lattice, make_zero_one

line = make_lattice(1, 21, "linf")  # spacing 1/10
plane = make_lattice(2, 9, "linf")  # spacing 1/4

for name, S, even in [("line", line, [Fraction(k, 5) for k in range(1, 11)]),
                      ("plane", plane, [Fraction(k, 2) for k in range(1, 5)])]:
    for kind in ("closed", "open"):
        full = doubling_constant(S, kind)
        part = doubling_constant(S, kind, radii=even)
        print(f"{name:5s} {kind:6s} all radii D={full.D} (witness {full.witness_ball})  even radii D={part.D}")

# the 0-1 space: the whole space at radius > 1, singletons below
print([doubling_constant(make_zero_one(n), "open").D for n in (2, 5, 9)])

# the greedy count is an upper bound; here it happens to be tight
print(doubling_constant(plane, "open", "greedy").D, doubling_constant(plane, "open").D)
