"""
Evenness of Farey points
========================

``H(x, y) = y / (x + y)`` sends the tree into [0, 1].  ``delta_p`` measures
how far the ``j``-th point of a path sits from ``j/m``; everything below is
exact rational arithmetic.
"""

import numpy as np

from fareycorona.equidistribution import local_spacing_check, s_n, totient_identity_table, trend_csv, trend_table

print([str(s_n(n)) for n in range(1, 6)])
print(totient_identity_table(10)[-1])

rows = trend_table(range(100, 1001, 100))
# the CSV carries exact numerators and denominators; show the decimal columns
for line in trend_csv(rows).splitlines():
    cells = line.split(",")
    print(cells[0], *cells[5:])
ratios = np.array([r["delta2_R_over_logR"] for r in rows])
print("delta2 * R / log R:", ratios.round(4))

rep = local_spacing_check(50)
print(rep["shifted"]["first"], rep["shifted"]["second"], rep["shifted"]["ok"])
