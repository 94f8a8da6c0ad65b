"""Named quandles and cocycles used throughout the worked examples.

Each function builds a fresh object; nothing here is cached state.
"""

from __future__ import annotations

from .complex import Cochain, combine
from .quandle import FiniteQuandle, alexander, dihedral

__all__ = [
    "z8_t5",
    "z8_t3",
    "s4",
    "r3",
    "r4",
    "THETA_TERMS",
    "theta_z8_t5",
    "theta_z8_t5_literal",
    "s4_cocycle",
    "r4_cocycle",
    "r3_xi",
    "r3_phi3",
    "r3_phi3_literal",
]

# the printed list; as printed it is not a cocycle, its transpose is
THETA_TERMS = ((0, 1), (0, 5), (1, 5), (2, 1), (2, 5), (3, 5), (5, 1), (7, 1))

XI_TERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 1), (2, 0, 1), (2, 0, 2), (1, 0, 2))

PHI3_TERMS = (
    ((0, 2, 0), 1),
    ((1, 0, 1), 1),
    ((1, 0, 2), 1),
    ((2, 0, 2), 1),
    ((2, 1, 2), 1),
    ((0, 1, 0), -1),
    ((0, 2, 1), -1),
)


def z8_t5() -> FiniteQuandle:
    return alexander(8, "T-5")


def z8_t3() -> FiniteQuandle:
    return alexander(8, "T-3")


def s4() -> FiniteQuandle:
    """Z_2[T]/(T^2+T+1); elements 0, 1, T, 1+T are encoded 0, 1, 2, 3."""
    return alexander(2, "T^2+T+1")


def r3() -> FiniteQuandle:
    return dihedral(3)


def r4() -> FiniteQuandle:
    return dihedral(4)


def theta_z8_t5(X: FiniteQuandle | None = None) -> Cochain:
    """The Z_2-valued 2-cocycle on Z_8[T]/(T-5) (argument order transposed)."""
    X = X or z8_t5()
    return combine(X, [((b, a), 1) for a, b in THETA_TERMS], 2)


def theta_z8_t5_literal(X: FiniteQuandle | None = None) -> Cochain:
    """The same list read in printed argument order; not a cocycle."""
    X = X or z8_t5()
    return combine(X, [(x, 1) for x in THETA_TERMS], 2)


def s4_cocycle(X: FiniteQuandle | None = None) -> Cochain:
    """Product of chi_(x,y) over x != y with x, y != T (encoded 2), mod 2."""
    X = X or s4()
    els = [0, 1, 3]
    return combine(X, [((x, y), 1) for x in els for y in els if x != y], 2)


def r4_cocycle(X: FiniteQuandle | None = None) -> Cochain:
    """chi_(0,1) chi_(0,3) on R_4, taken mod 2."""
    X = X or r4()
    return combine(X, [((0, 1), 1), ((0, 3), 1)], 2)


def r3_xi(X: FiniteQuandle | None = None) -> Cochain:
    """The Z_3-valued 3-cocycle used for shadow invariants of R_3."""
    X = X or r3()
    return combine(X, [(x, 1) for x in XI_TERMS], 3)


def r3_phi3(X: FiniteQuandle | None = None) -> Cochain:
    """The R_3 3-cocycle with chi_(2,0,2) counted once."""
    X = X or r3()
    return combine(X, PHI3_TERMS, 3)


def r3_phi3_literal(X: FiniteQuandle | None = None) -> Cochain:
    """The printed form, chi_(2,0,2) appearing twice; not a cocycle."""
    X = X or r3()
    return combine(X, list(PHI3_TERMS) + [((2, 0, 2), 1)], 3)
