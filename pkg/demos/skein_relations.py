"""Solving for skein relations among tangles with equal boundary behaviour.

Run: python3 demos/skein_relations.py
"""

from quandlecoh import catalog as cat
from quandlecoh.diagram import parse_braid
from quandlecoh.reproduce import THREE_TANGLE_K1, THREE_TANGLE_K2
from quandlecoh.skein import solve_skein, solve_skein_shadow


def show(title, sy):
    print(f"== {title}")
    for ln in sy.transcript():
        print("  " + ln)
    print()


def op(w):
    return parse_braid(w, closed=False)


R4 = cat.r4()
show("R_4: s1^4, identity, s1^-4", solve_skein([op("w2: 1 1 1 1"), op("w2:"), op("w2: -1 -1 -1 -1")], R4, cat.r4_cocycle(R4)))

S4 = cat.s4()
show("S_4: identity and two 3-braids with identity Burau matrix",
     solve_skein([op("w3:"), op(THREE_TANGLE_K1), op(THREE_TANGLE_K2)], S4, cat.s4_cocycle(S4)))

R3 = cat.r3()
show("R_3 shadow: s1^3, identity, s1^-3",
     solve_skein_shadow([op("w2: 1 1 1"), op("w2:"), op("w2: -1 -1 -1")], R3, cat.r3_xi(R3)))
