"""The dimension shift rho(x0, x1, ..., xn) = (x1, ..., xn) against the boundary.

rho d = -d rho holds in low degrees but breaks from degree 3 on; this
prints the first counterexample for each quandle and the (2,1,3) example.

Run: python3 demos/shift_defect.py
"""

from quandlecoh import catalog as cat
from quandlecoh.complex import Chain, boundary, shift_anticommute_witness, shift_chain

for make in (cat.r3, cat.r4, cat.s4, cat.z8_t5):
    X = make()
    for n in (2, 3, 4):
        w = shift_anticommute_witness(X, n)
        print(f"{X.label:18s} n={n}: {'holds' if w is None else f'fails at {w}'}")

R4 = cat.r4()
c = Chain.generator(R4, (2, 1, 3))
print("d(2,1,3)      =", boundary(c))
print("rho(2,1,3)    =", shift_chain(c))
print("d rho(2,1,3)  =", boundary(shift_chain(c)))
print("rho d(2,1,3)  =", shift_chain(boundary(c)))
