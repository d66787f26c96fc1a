"""
Walking the Stern-Brocot tree
=============================

Vertices are coprime pairs ``(x, y)`` standing for ``y/x``.  Every vertex is
reached from ``(1, 1)`` by a word in two generators, and the word, the
continued fraction and the pair of bounds all carry the same information.
"""

from fareycorona.core import bounds, continued_fraction, meet, mother, word_of_vertex
from fareycorona.paths import enumerate_paths, expand, extract_lambda, maxima, path_from_interior

for v in [(1, 1), (2, 3), (5, 2), (13, 8)]:
    w = word_of_vertex(v)
    print(v, "word", list(w.exponents), "cf", continued_fraction(v), "bounds", bounds(v), "mother", mother(v))

print("meet of 1/3 and 2/3 vertices:", meet((1, 3), (2, 3)))

# %%
# Paths from 0 to infinity
# ------------------------
# A mother-closed set of vertices, listed in real order, is a path of Farey
# edges from ``(1, 0)`` to ``(0, 1)``.  Their number by degree is Catalan.

counts = {m: len(ps) for m, ps in enumerate_paths(8).items()}
print(counts)

c = path_from_interior([(2, 1), (1, 1), (1, 2)])
print("leaves of", c, maxima(c))

# %%
# Expanding over local minima
# ---------------------------
# A path whose points are leaves, local minima or midpoints splits as its
# minima plus one signed integer per edge.

five = expand(path_from_interior([(1, 1)]), [-1, 1])
print(five, extract_lambda(five))
