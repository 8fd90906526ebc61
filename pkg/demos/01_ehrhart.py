"""Counting lattice points in dilates and reading off h*-vectors and degrees."""

from latdeg.construct import dilate, exceptional_simplex, lawrence_prism, pyramid
from latdeg.ehrhart import degree, degree_via_interior, ehrhart_counts, hstar
from latdeg.polytope import LatticePolytope

square = LatticePolytope([(0, 0), (2, 0), (0, 2), (2, 2)], name="[0,2]^2")
print(square.name, "counts", ehrhart_counts(square, 3), "h*", hstar(square).trimmed())

# Lawrence prisms have h* = (1, sum(h) - 1) whatever the heights
for h in [(1, 1), (3, 2), (2, 2, 1), (4, 1, 1, 1)]:
    p = lawrence_prism(h)
    print(f"prism {h}: h* = {hstar(p).trimmed()}")

# exceptional simplices all have h* = (1, 3), and pyramids do not change h*
for n in range(2, 6):
    print(f"exceptional simplex in dim {n}: h* = {hstar(exceptional_simplex(n)).trimmed()}")
print("pyramid over [0,2]^2:", hstar(pyramid(square, 2)).trimmed())

# the degree can also be read off from the first dilate with an interior point
for p in [square, lawrence_prism((3, 2)), dilate(lawrence_prism((1, 1, 1)), 2)]:
    print(f"{p.name or p!r}: degree {degree(p)}, from interior points {degree_via_interior(p)}")
