"""Cocycle invariants of small torus links and knots.

Run: python3 demos/golden_invariants.py
"""

from quandlecoh import catalog as cat
from quandlecoh.diagram import count_colorings, parse_braid, state_sum_2, state_sum_3_shadow

# T(2,4) over Z_8[T]/(T-5): the coefficient sum counts colourings
X, theta = cat.z8_t5(), cat.theta_z8_t5()
t24 = parse_braid("w2: 1 1 1 1")
print("T(2,4) over", X.label, ":", state_sum_2(t24, X, theta))
print("  colourings:", count_colorings(t24, X))

# the trefoil and its mirror are not told apart by this S_4 cocycle
S4, phi = cat.s4(), cat.s4_cocycle()
for word in ("w2: 1 1 1", "w2: -1 -1 -1"):
    print(f"{word:14s} over S_4 : {state_sum_2(parse_braid(word), S4, phi)}")

# shadow invariant of the trefoil with the R_3 3-cocycle
R3 = cat.r3()
print("trefoil shadow sum over R_3 :", state_sum_3_shadow(parse_braid("w2: 1 1 1"), R3, cat.r3_xi(R3)))
