"""Recognizing degree <= 1 polytopes after a random change of lattice coordinates."""

from latdeg.classify import classify, cayley_layers, is_narrow
from latdeg.construct import exceptional_simplex, lawrence_prism, pyramid, scramble
from latdeg.polytope import LatticePolytope

inputs = [
    scramble(lawrence_prism((3, 2)), seed=1)[0],
    scramble(exceptional_simplex(3), seed=2)[0],
    scramble(pyramid(lawrence_prism((2, 2)), 2), seed=3)[0],
    LatticePolytope([(0, 0), (2, 0), (0, 2), (2, 2)]),
]
for p in inputs:
    c = classify(p)
    print("vertices", list(p.vertices))
    print("  ->", c.tag.value, "heights", c.heights, "n", c.n)
    if c.witness is not None:
        print("  witness image", sorted(c.witness(v) for v in p.vertices))

print("unit square narrow:", is_narrow(lawrence_prism((1, 1))))
print("exceptional triangle narrow:", is_narrow(exceptional_simplex(2)))

# every degree-one polytope of dimension >= 3 splits as a Cayley polytope
d0, d1, m = cayley_layers(inputs[1])
print("exceptional 3-simplex splits into", list(d0.vertices), "and", list(d1.vertices))
