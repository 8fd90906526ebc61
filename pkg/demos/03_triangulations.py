"""Lattice triangulations, flips and secondary polytopes of small configurations."""

from latdeg.construct import exceptional_simplex, lawrence_prism
from latdeg.triang import (PointConfig, count_formula, enumerate_all, flip_graph, gkz, prism_word_triangulation,
                           prism_words, secondary_polytope)

cfg = PointConfig(exceptional_simplex(2))
ts = enumerate_all(cfg)
print("exceptional triangle:", len(ts), "triangulations")
for t in ts[:3]:
    print("  ", t.simplices, "gkz", gkz(cfg, t))
ts, edges = flip_graph(cfg, ts)
print("flip graph edges:", len(edges))
print("secondary polytope:", secondary_polytope(cfg, ts).to_dict())

# triangulations of Lawrence prisms are encoded by words
h = (2, 1)
prism = PointConfig(lawrence_prism(h))
for w in prism_words(h):
    print("word", w, "->", prism_word_triangulation(h, w, prism).simplices)
print("formula", count_formula(h), "enumeration", len(enumerate_all(prism)))
print("prism (1,1,1):", secondary_polytope(PointConfig(lawrence_prism((1, 1, 1)))).to_dict())
