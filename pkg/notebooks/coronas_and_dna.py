"""
Coronas and their d.n.a.
========================

A corona is a path whose tower of local minima stays well-formed all the way
down to the empty path.  The signed fin lengths of each level, top first,
rebuild it.
"""

from fareycorona.corona import (
    closed_points,
    corona_number,
    dna_decode,
    dna_encode,
    eigenvalue,
    enumerate_coronas,
    open_edges,
)
from fareycorona.paths import FormalSum, path_from_interior

levels = enumerate_coronas(12, with_edges=False).levels
print({m: len(cs) for m, cs in levels.items()})

c = levels[7][0]
d = dna_encode(c)
print(c, d.layers, dna_decode(d).path == c)

# %%
# Adding and removing one point
# -----------------------------
# ``open_edges`` are the edges whose mediant keeps a corona, ``closed_points``
# the leaves that can be dropped.  The number operator built from the two
# has diagonal coefficient ``#open - #closed``, but from degree 7 on it also
# has off-diagonal terms.

c = path_from_interior([(2, 1), (1, 1), (2, 3), (3, 5), (1, 2), (1, 3)])
print("open", open_edges(c), "closed", closed_points(c), "eigenvalue", eigenvalue(c))
for q, k in sorted(corona_number(FormalSum.of(c)).items()):
    print(k, q)

offdiag = {}
for m in range(1, 11):
    for p in levels[m]:
        if any(q != p for q in corona_number(FormalSum.of(p))):
            offdiag[m] = offdiag.get(m, 0) + 1
print("coronas with off-diagonal terms:", offdiag)
