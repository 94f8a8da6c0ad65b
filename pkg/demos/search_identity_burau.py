"""Search 3-braids whose S_4 Burau matrix is the identity.

Such braids share the boundary behaviour of the trivial 3-tangle, so the
three can enter one skein relation.

Run: python3 demos/search_identity_burau.py
"""

from quandlecoh import catalog as cat
from quandlecoh.diagram import format_braid
from quandlecoh.skein import identity_burau_words

S4 = cat.s4()
words = list(identity_burau_words(S4, 3, 5, min_len=2))
print(f"{len(words)} freely reduced words of length 2..5 with identity Burau matrix:")
for t in words[:20]:
    print("  " + format_braid(t))
