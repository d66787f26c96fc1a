"""
Sub-level sets of norms
=======================

For a monotone norm the vertices with ``|v| <= R`` form a corona.  For a
linear norm ``alpha x + beta y`` each d.n.a. layer has a closed form in
floors, and the degree of every level can be predicted from the one above.
"""

from fractions import Fraction

import numpy as np

from fareycorona import bulk
from fareycorona.corona import dna_encode
from fareycorona.norms import Linear, Max, Power, build_corona, corollary112_count, theorem111_lambda

for norm in (Linear(1, 1), Linear(1, Fraction(5, 2)), Power(2), Max()):
    c = build_corona(norm, 30)
    print(norm, "degree", c.degree, "height", c.height, "levels", [lv.degree for lv in c.tower])

c = build_corona(Linear(1, 2), 40)
for n in range(1, c.height + 1):
    lf = theorem111_lambda(1, 2, 40, n, corona=c)
    print(n, lf.values, lf.values == dna_encode(c).layers[c.height - n], corollary112_count(1, 2, 40, n, corona=c))

# %%
# Many R at once
# --------------
# The tree is walked once at the largest R; smaller R become masks over the
# same arrays.

base = bulk.Base.walk(Linear(1, 1), 300)
print(len(base), "vertices; sizes", np.bincount(base.x + base.y)[:10])
layers, counts = bulk.theorem111_grid(1, 1, range(1, 301), base=base)
print(layers.label, layers.checked, layers.ok, counts.ok)
