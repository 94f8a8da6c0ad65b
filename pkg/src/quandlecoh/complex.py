"""Rack, degenerate and quandle chain complexes of a finite quandle.

Chains are sparse integer combinations of tuples.  Cochains are dense
``numpy`` arrays indexed by tuples, holding additive exponents in Z_p; the
multiplicative form t^k only appears once a state-sum is evaluated.

Basis tuples are listed in base-|X| lexicographic order.  The quandle (``Q``)
variant uses the non-degenerate tuples as its basis, so degenerate tuples are
simply zero there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .coeff import invariant_factors, is_prime, kernel_mod_p, rank_mod_p
from .quandle import FiniteQuandle, QuandleHom, build_quandle, trivial

__all__ = [
    "VARIANTS",
    "InfeasibleSize",
    "basis_size",
    "Chain",
    "Cochain",
    "HomologyGroup",
    "is_degenerate",
    "basis",
    "boundary",
    "boundary_matrix",
    "coboundary_matrix",
    "delta",
    "is_cocycle",
    "is_coboundary",
    "shift_chain",
    "shift_cochain",
    "shift_cochain_matrix",
    "verify_shift_anticommutes",
    "shift_anticommute_witness",
    "verify_shift_anticommutes_cochains",
    "verify_shift_preserves_degenerate",
    "verify_shift_cocycle_iff",
    "homology",
    "cohomology_dim",
    "cohomology_dim_uct",
    "cocycle_basis",
    "char_cochain",
    "combine",
    "pullback_cochain",
    "pullback_cocycle_basis",
    "in_span_with_coboundaries",
    "format_cochain",
    "parse_cochain",
    "read_cochain",
    "write_cochain",
]

VARIANTS = ("R", "D", "Q")
MAX_MATRIX_ENTRIES = 10**7


class InfeasibleSize(RuntimeError):
    """A requested matrix or enumeration exceeds the resource guard."""


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def is_degenerate(x: Sequence[int]) -> bool:
    return any(x[i] == x[i + 1] for i in range(len(x) - 1))


def basis(X: FiniteQuandle, n: int, variant: str = "Q") -> list[tuple[int, ...]]:
    _check_variant(variant)
    if n < 0:
        return []
    if n == 0:
        return [] if variant == "D" else [()]
    tuples = itertools.product(range(X.n), repeat=n)
    if variant == "R":
        return list(tuples)
    if variant == "D":
        return [x for x in tuples if is_degenerate(x)]
    return [x for x in tuples if not is_degenerate(x)]


def basis_size(X: FiniteQuandle, n: int, variant: str = "Q") -> int:
    """len(basis(X, n, variant)) without enumerating."""
    _check_variant(variant)
    if n < 0:
        return 0
    if n == 0:
        return 0 if variant == "D" else 1
    full, nondeg = X.n**n, X.n * (X.n - 1) ** (n - 1)
    return {"R": full, "D": full - nondeg, "Q": nondeg}[variant]


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class Chain:
    """Integer combination of n-tuples over X in one of the three complexes."""

    X: FiniteQuandle
    n: int
    variant: str = "Q"
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_variant(self.variant)
        clean = {}
        for x, c in self.terms.items():
            x = tuple(int(v) for v in x)
            if len(x) != self.n:
                raise ValueError(f"tuple {x} does not have degree {self.n}")
            if self.variant == "Q" and is_degenerate(x):
                continue
            if self.variant == "D" and not is_degenerate(x):
                raise ValueError(f"non-degenerate tuple {x} in a degenerate chain")
            if c:
                clean[x] = clean.get(x, 0) + int(c)
        self.terms = {x: c for x, c in sorted(clean.items()) if c}

    @classmethod
    def generator(cls, X, x, variant="Q") -> "Chain":
        return cls(X, len(x), variant, {tuple(x): 1})

    def _like(self, terms, n=None):
        return Chain(self.X, self.n if n is None else n, self.variant, terms)

    def __add__(self, other: "Chain") -> "Chain":
        if other.n != self.n or other.variant != self.variant:
            raise ValueError("adding chains of different degree or variant")
        t = dict(self.terms)
        for x, c in other.terms.items():
            t[x] = t.get(x, 0) + c
        return self._like(t)

    def __neg__(self):
        return self._like({x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return self._like({x: k * c for x, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.n == other.n
            and self.variant == other.variant
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for x, c in self.terms.items():
            g = "(" + ",".join(map(str, x)) + ")" if len(x) != 1 else str(x[0])
            mag = abs(c)
            body = g if mag == 1 else f"{mag}{g}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)


def _boundary_terms(X: FiniteQuandle, x: tuple[int, ...]) -> dict:
    """Raw boundary of one tuple in the rack complex."""
    n = len(x)
    out: dict = {}
    if n <= 1:
        return out
    T = X.table
    for i in range(1, n):  # 0-based position of the deleted entry
        sign = 1 if (i + 1) % 2 == 0 else -1
        face = x[:i] + x[i + 1:]
        xi = x[i]
        acted = tuple(int(T[a, xi]) for a in x[:i]) + x[i + 1:]
        out[face] = out.get(face, 0) + sign
        out[acted] = out.get(acted, 0) - sign
    return out


def boundary(c: Chain) -> Chain:
    terms: dict = {}
    for x, k in c.terms.items():
        for y, s in _boundary_terms(c.X, x).items():
            terms[y] = terms.get(y, 0) + k * s
    return Chain(c.X, max(c.n - 1, 0), c.variant, terms)


def _guard(rows: int, cols: int):
    if rows * cols > MAX_MATRIX_ENTRIES:
        raise InfeasibleSize(
            f"matrix of size {rows}x{cols} exceeds the {MAX_MATRIX_ENTRIES} entry guard"
        )


def boundary_matrix(X: FiniteQuandle, n: int, variant: str = "Q") -> np.ndarray:
    """Matrix of the boundary C_n -> C_{n-1}; rows basis(n-1), columns basis(n)."""
    _guard(basis_size(X, n - 1, variant), basis_size(X, n, variant))
    rows = basis(X, n - 1, variant)
    cols = basis(X, n, variant)
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if n <= 1:
        return M
    index = {x: i for i, x in enumerate(rows)}
    for j, x in enumerate(cols):
        for y, s in _boundary_terms(X, x).items():
            if s == 0:
                continue
            i = index.get(y)
            if i is not None:
                M[i, j] += s
            elif variant != "Q":
                raise AssertionError(f"boundary of {x} left the {variant} complex at {y}")
    return M


def coboundary_matrix(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> np.ndarray:
    """Matrix of delta: C^n -> C^{n+1} over Z_p in the basis() coordinates."""
    return boundary_matrix(X, n + 1, variant).T % p


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


class Cochain:
    """A Z_p-valued function on n-tuples, stored as additive exponents."""

    def __init__(self, X: FiniteQuandle, n: int, p: int, values=None, variant: str = "Q"):
        _check_variant(variant)
        if p < 1:
            raise ValueError("coefficient modulus must be positive")
        shape = (X.n,) * n
        if values is None:
            values = np.zeros(shape, dtype=np.int64)
        values = np.asarray(values, dtype=np.int64) % p
        if values.shape != shape:
            raise ValueError(f"cochain values must have shape {shape}, got {values.shape}")
        if variant == "Q" and n >= 2 and values[_degenerate_mask(X.n, n)].any():
            raise ValueError("quandle cochains must vanish on degenerate tuples")
        values.setflags(write=False)
        self.X = X
        self.n = n
        self.p = p
        self.values = values
        self.variant = variant

    def __call__(self, *x) -> int:
        if len(x) == 1 and isinstance(x[0], tuple):
            x = x[0]
        return int(self.values[tuple(x)])

    def _like(self, values, n=None):
        return Cochain(self.X, self.n if n is None else n, self.p, values, self.variant)

    def _compat(self, other):
        if (other.X is not self.X and other.X != self.X) or other.n != self.n or other.p != self.p:
            raise ValueError("cochains differ in quandle, degree or modulus")

    def __add__(self, other):
        self._compat(other)
        return self._like(self.values + other.values)

    def __neg__(self):
        return self._like(-self.values)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return self._like(k * self.values)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.n == other.n
            and self.p == other.p
            and self.X == other.X
            and np.array_equal(self.values, other.values)
        )

    def is_zero(self) -> bool:
        return not self.values.any()

    def support(self) -> list[tuple[tuple[int, ...], int]]:
        return [(tuple(int(v) for v in x), int(self.values[tuple(x)])) for x in np.argwhere(self.values)]

    def vector(self, variant: str | None = None) -> np.ndarray:
        """Coordinates in the basis() order of the given variant."""
        b = basis(self.X, self.n, variant or self.variant)
        if self.n == 0:
            return self.values.reshape(1)
        return np.array([self.values[x] for x in b], dtype=np.int64)

    @classmethod
    def from_vector(cls, X, n, p, vec, variant="Q") -> "Cochain":
        vals = np.zeros((X.n,) * n, dtype=np.int64)
        for x, v in zip(basis(X, n, variant), vec):
            vals[x] = v
        return cls(X, n, p, vals, variant)

    def __repr__(self):
        return f"Cochain(X={self.X.label!r}, n={self.n}, p={self.p}, support={len(self.support())})"


def _degenerate_mask(N: int, n: int) -> np.ndarray:
    idx = np.indices((N,) * n)
    mask = np.zeros((N,) * n, dtype=bool)
    for i in range(n - 1):
        mask |= idx[i] == idx[i + 1]
    return mask


def _delta_values(X: FiniteQuandle, f: np.ndarray, n: int) -> np.ndarray:
    N = X.n
    T = X.table
    out = np.zeros((N,) * (n + 1), dtype=np.int64)
    if n == 0:
        return out
    x = np.indices((N,) * (n + 1))
    for i in range(1, n + 1):
        sign = 1 if (i + 1) % 2 == 0 else -1
        face = tuple(x[j] for j in range(n + 1) if j != i)
        acted = tuple(T[x[j], x[i]] for j in range(i)) + tuple(x[j] for j in range(i + 1, n + 1))
        out += sign * (f[face] - f[acted])
    return out


def delta(f: Cochain) -> Cochain:
    """(delta f)(x) = f(boundary x), degree n -> n + 1."""
    return Cochain(f.X, f.n + 1, f.p, _delta_values(f.X, f.values, f.n) % f.p, f.variant)


def is_cocycle(f: Cochain) -> bool:
    return delta(f).is_zero()


def _require_prime(p):
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def is_coboundary(f: Cochain) -> bool:
    _require_prime(f.p)
    return in_span_with_coboundaries(f, [])


def shift_chain(c: Chain, conditional: bool = True) -> Chain:
    """Drop the first coordinate; tuples whose first two entries agree go to 0.

    With ``conditional=False`` every tuple is shifted, which is the rack
    complex map that does anticommute with the boundary.
    """
    if c.n < 1:
        raise ValueError("the shift map needs chains of degree at least 1")
    terms: dict = {}
    for x, k in c.terms.items():
        if conditional and c.n >= 2 and x[0] == x[1]:
            continue
        y = x[1:]
        terms[y] = terms.get(y, 0) + k
    return Chain(c.X, c.n - 1, c.variant, terms)


def shift_cochain(f: Cochain) -> Cochain:
    """(rho f)(x0, x1, ..., xn) = f(x1, ..., xn) if x0 != x1, else 0."""
    if f.n < 1:
        raise ValueError("the shift map needs cochains of degree at least 1")
    N = f.X.n
    vals = np.broadcast_to(f.values[None, ...], (N,) + f.values.shape).copy()
    vals[np.arange(N), np.arange(N)] = 0
    return Cochain(f.X, f.n + 1, f.p, vals, f.variant)


def shift_cochain_matrix(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> np.ndarray:
    """Matrix of the cochain shift C^n -> C^{n+1} in basis() coordinates."""
    _guard(basis_size(X, n + 1, variant), basis_size(X, n, variant))
    src = basis(X, n, variant)
    dst = basis(X, n + 1, variant)
    index = {x: i for i, x in enumerate(src)}
    M = np.zeros((len(dst), len(src)), dtype=np.int64)
    for r, y in enumerate(dst):
        if y[0] == y[1]:
            continue
        i = index.get(y[1:])
        if i is not None:
            M[r, i] = 1
    return M % p


def shift_anticommute_witness(X: FiniteQuandle, n: int, variant: str = "Q", conditional: bool = True):
    """First generator with shift(boundary c) != -boundary(shift c), or None."""
    if n < 2:
        raise ValueError("need degree at least 2")
    for x in basis(X, n, variant):
        c = Chain.generator(X, x, variant)
        if shift_chain(boundary(c), conditional) != -boundary(shift_chain(c, conditional)):
            return x
    return None


def verify_shift_anticommutes(X: FiniteQuandle, n: int, variant: str = "Q", conditional: bool = True) -> bool:
    """Check shift(boundary c) == -boundary(shift c) on every degree-n generator."""
    return shift_anticommute_witness(X, n, variant, conditional) is None


def verify_shift_anticommutes_cochains(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> bool:
    """Check shift(delta f) == -delta(shift f) on every characteristic n-cochain."""
    if n < 1:
        raise ValueError("need degree at least 1")
    for x in basis(X, n, variant):
        f = char_cochain(X, x, p, variant)
        if shift_cochain(delta(f)) != -delta(shift_cochain(f)):
            return False
    return True


def verify_shift_preserves_degenerate(X: FiniteQuandle, n: int) -> bool:
    """The shift sends every degenerate generator into the degenerate subcomplex."""
    for x in basis(X, n, "D"):
        try:
            shift_chain(Chain.generator(X, x, "D"))
        except ValueError:
            return False
    return True


def verify_shift_cocycle_iff(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> bool:
    """shift(f) is a cocycle exactly when f is, for every n-cochain f.

    Equivalent to ker(delta) == ker(delta o shift) on C^n; checked by ranks
    over Z_p, and additionally on each characteristic cochain.
    """
    _require_prime(p)
    D = coboundary_matrix(X, n, p, variant)
    DS = (coboundary_matrix(X, n + 1, p, variant) @ shift_cochain_matrix(X, n, p, variant)) % p
    r1, r2 = rank_mod_p(D, p), rank_mod_p(DS, p)
    r12 = rank_mod_p(np.vstack([D, DS]), p)
    if not (r1 == r2 == r12):
        return False
    for x in basis(X, n, variant):
        f = char_cochain(X, x, p, variant)
        if is_cocycle(f) != is_cocycle(shift_cochain(f)):
            return False
    return True


# ---------------------------------------------------------------------------
# (co)homology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology(X: FiniteQuandle, n: int, variant: str = "Q", coefficients: int = 0) -> HomologyGroup:
    """H_n of the chosen complex with coefficients Z (0) or Z_p (prime p).

    Over Z_p the result is reported as a sum of copies of Z/p.
    """
    if n < 1:
        raise ValueError("homology is computed in degrees n >= 1")
    dn = boundary_matrix(X, n, variant)
    dn1 = boundary_matrix(X, n + 1, variant)
    dim = len(basis(X, n, variant))
    if coefficients == 0:
        fn = invariant_factors(dn.tolist(), dn.shape) if dn.size else ()
        fn1 = invariant_factors(dn1.tolist(), dn1.shape) if dn1.size else ()
        free = dim - len(fn) - len(fn1)
        return HomologyGroup(free, tuple(d for d in fn1 if d > 1))
    p = coefficients
    _require_prime(p)
    r = (rank_mod_p(dn, p) if dn.size else 0) + (rank_mod_p(dn1, p) if dn1.size else 0)
    return HomologyGroup(0, (p,) * (dim - r))


def cohomology_dim(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> int:
    """dim H^n(X; Z_p) = dim ker delta^n - rank delta^{n-1}."""
    _require_prime(p)
    if n < 1:
        raise ValueError("cohomology is computed in degrees n >= 1")
    dn = coboundary_matrix(X, n, p, variant)
    dim = len(basis(X, n, variant))
    ker = dim - (rank_mod_p(dn, p) if dn.size else 0)
    prev = coboundary_matrix(X, n - 1, p, variant)
    img = rank_mod_p(prev, p) if prev.size else 0
    return ker - img


def cohomology_dim_uct(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> int:
    """Same dimension via integral homology and universal coefficients."""
    _require_prime(p)
    hn = homology(X, n, variant)
    dim = hn.free_rank + sum(1 for d in hn.torsion if d % p == 0)
    if n >= 2:
        hprev = homology(X, n - 1, variant)
        dim += sum(1 for d in hprev.torsion if d % p == 0)
    return dim


def cocycle_basis(X: FiniteQuandle, n: int, p: int, variant: str = "Q") -> list[Cochain]:
    _require_prime(p)
    D = coboundary_matrix(X, n, p, variant)
    K = kernel_mod_p(D, p)
    return [Cochain.from_vector(X, n, p, v, variant) for v in K]


# ---------------------------------------------------------------------------
# constructing cochains
# ---------------------------------------------------------------------------


def char_cochain(X: FiniteQuandle, x: Sequence[int], p: int, variant: str = "Q", exponent: int = 1) -> Cochain:
    """The characteristic cochain of one tuple (value t^exponent there, 1 elsewhere)."""
    x = tuple(int(v) for v in x)
    if variant == "Q" and is_degenerate(x):
        raise ValueError(f"degenerate tuple {x} has no characteristic quandle cochain")
    vals = np.zeros((X.n,) * len(x), dtype=np.int64)
    vals[x] = exponent
    return Cochain(X, len(x), p, vals, variant)


def combine(X: FiniteQuandle, entries: Iterable[tuple[Sequence[int], int]], p: int, n: int | None = None, variant: str = "Q") -> Cochain:
    """Sum of characteristic cochains, exponents added mod p.

    The multiplicative product chi_a chi_b ... of the literature is the
    additive sum here.
    """
    entries = [(tuple(int(v) for v in x), int(e)) for x, e in entries]
    if n is None:
        if not entries:
            raise ValueError("cannot infer the degree of an empty combination")
        n = len(entries[0][0])
    vals = np.zeros((X.n,) * n, dtype=np.int64)
    for x, e in entries:
        if len(x) != n:
            raise ValueError("all tuples in a combination must have the same length")
        if variant == "Q" and is_degenerate(x):
            raise ValueError(f"degenerate tuple {x} in a quandle cochain")
        vals[x] += e
    return Cochain(X, n, p, vals, variant)


def pullback_cochain(f: QuandleHom, g: Cochain) -> Cochain:
    """(f^* g)(x1, ..., xn) = g(f x1, ..., f xn)."""
    if g.X != f.target:
        raise ValueError("cochain does not live on the homomorphism's target")
    m = np.asarray(f.map, dtype=np.int64)
    N = f.source.n
    if g.n == 0:
        vals = g.values.copy()
    else:
        idx = np.indices((N,) * g.n)
        vals = g.values[tuple(m[i] for i in idx)]
    return Cochain(f.source, g.n, g.p, vals, g.variant)


def pullback_cocycle_basis(f: QuandleHom, n: int, p: int, variant: str = "Q") -> list[Cochain]:
    return [pullback_cochain(f, g) for g in cocycle_basis(f.target, n, p, variant)]


def in_span_with_coboundaries(f: Cochain, S: Sequence[Cochain], p: int | None = None) -> bool:
    """Is f in span(S) + B^n over Z_p?"""
    p = f.p if p is None else p
    _require_prime(p)
    if p != f.p:
        raise ValueError("modulus mismatch")
    for g in S:
        if g.n != f.n or g.p != p:
            raise ValueError("spanning cochains must share degree and modulus with f")
    rows = [g.vector(f.variant) for g in S]
    if f.n >= 1:
        # image of delta^{n-1} is the column space of its matrix
        B = coboundary_matrix(f.X, f.n - 1, p, f.variant)
        rows.extend(B.T)
    v = f.vector()
    if not rows:
        return not (v % p).any()
    M = np.array(rows, dtype=np.int64).reshape(len(rows), -1)
    r = rank_mod_p(M, p)
    return rank_mod_p(np.vstack([M, v[None, :]]), p) == r


# ---------------------------------------------------------------------------
# cochain file format
# ---------------------------------------------------------------------------


def format_cochain(f: Cochain) -> str:
    lines = [f"cochain X={f.X.label} n={f.n} p={f.p}"]
    for x, e in f.support():
        lines.append(" ".join(map(str, x)) + f" : {e}")
    return "\n".join(lines) + "\n"


def parse_cochain(text: str, X: FiniteQuandle | None = None) -> Cochain:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty cochain file")
    head = lines[0].split()
    if not head or head[0] != "cochain":
        raise ValueError(f"bad cochain header {lines[0]!r}")
    fields = dict(tok.split("=", 1) for tok in head[1:] if "=" in tok)
    try:
        n, p = int(fields["n"]), int(fields["p"])
    except (KeyError, ValueError):
        raise ValueError("cochain header needs integer n= and p= fields") from None
    if X is None:
        if "X" not in fields:
            raise ValueError("cochain header has no X= label and no quandle was supplied")
        X = build_quandle(fields["X"])
    entries = []
    for ln in lines[1:]:
        lhs, sep, rhs = ln.partition(":")
        if not sep:
            raise ValueError(f"bad cochain line {ln!r}; expected '<x1> ... <xn> : <exponent>'")
        x = tuple(int(v) for v in lhs.split())
        if len(x) != n:
            raise ValueError(f"tuple {x} does not have degree {n}")
        if any(not 0 <= v < X.n for v in x):
            raise ValueError(f"tuple {x} has entries outside the quandle")
        entries.append((x, int(rhs)))
    return combine(X, entries, p, n=n)


def read_cochain(path, X: FiniteQuandle | None = None) -> Cochain:
    return parse_cochain(Path(path).read_text(), X)


def write_cochain(f: Cochain, path) -> None:
    Path(path).write_text(format_cochain(f))
