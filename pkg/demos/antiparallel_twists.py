"""Antiparallel full twists P_n on Alexander quandles.

The colours after n twists are affine in n, so P_k acts trivially on colours
when k kills the coefficients; over S_4 the weight of P_2 is also trivial.

Run: python3 demos/antiparallel_twists.py
"""

from quandlecoh import catalog as cat
from quandlecoh.skein import antiparallel_colors, antiparallel_weight

S4, phi = cat.s4(), cat.s4_cocycle()
print("S_4 twists on top colours (x, y) = (1, 2)")
for n in range(-2, 5):
    print(f"  n={n:+d}: colours {antiparallel_colors(S4, 1, 2, n)}, weight {antiparallel_weight(S4, phi, 1, 2, n)}")

print("P_2 weight over every boundary colour:",
      sorted({str(antiparallel_weight(S4, phi, x, y, 2)) for x in range(4) for y in range(4)}))
