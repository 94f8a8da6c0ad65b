"""Quandle homology, the dimension shift, and cocycle state-sum invariants of links.

Submodules:

* ``coeff``    -- the group ring Z[Z_p], Smith normal form, linear algebra mod p
* ``quandle``  -- finite quandles, Alexander quandles, homomorphisms, orbits
* ``complex``  -- rack/degenerate/quandle chain complexes, cochains, shift maps
* ``diagram``  -- braid diagrams, colorings, 2- and 3-cocycle state-sums
* ``skein``    -- Burau matrices, skein relation solving, antiparallel tangles
* ``catalog``  -- the named quandles and cocycles of the worked examples
"""

__version__ = "0.1.0"

from .coeff import GroupRingElem, smith_normal_form
from .quandle import FiniteQuandle, alexander, build_quandle, dihedral, orbit_decomposition, trivial
from .complex import Chain, Cochain, boundary, cohomology_dim, delta, homology, is_cocycle, shift_chain, shift_cochain
from .diagram import BraidTangle, parse_braid, propagate, state_sum_2, state_sum_3_shadow, tangle_state_sum
from .skein import burau_matrix, solve_skein, solve_skein_shadow

__all__ = [
    "__version__",
    "GroupRingElem",
    "smith_normal_form",
    "FiniteQuandle",
    "alexander",
    "build_quandle",
    "dihedral",
    "orbit_decomposition",
    "trivial",
    "Chain",
    "Cochain",
    "boundary",
    "cohomology_dim",
    "delta",
    "homology",
    "is_cocycle",
    "shift_chain",
    "shift_cochain",
    "BraidTangle",
    "parse_braid",
    "propagate",
    "state_sum_2",
    "state_sum_3_shadow",
    "tangle_state_sum",
    "burau_matrix",
    "solve_skein",
    "solve_skein_shadow",
]
