"""Exact coefficient arithmetic.

Group ring elements of Z[t]/(t^p - 1), integer matrices with Smith normal
form, and linear algebra over Z and over prime fields Z_p.  Everything here
is exact; nothing ever touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GroupRingElem",
    "ModulusMismatch",
    "gr_add",
    "gr_mul",
    "gr_power",
    "SmithDecomposition",
    "smith_normal_form",
    "invariant_factors",
    "integer_kernel",
    "solve_integer",
    "kernel_mod_p",
    "rank_mod_p",
    "is_prime",
]


class ModulusMismatch(ValueError):
    """Two group ring elements over different cyclic groups were combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Group ring Z[t]/(t^p - 1)
# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:\*\s*)?(t(?:\^\s*(-?\d+))?)?")


@dataclass(frozen=True)
class GroupRingElem:
    """An element sum_k coeffs[k] t^k of Z[t]/(t^p - 1).

    The modulus ``p`` travels with every value; binary operations refuse to
    mix moduli instead of coercing.
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"modulus must be positive, got {self.p}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.p:
            raise ValueError(f"expected {self.p} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "GroupRingElem":
        return cls(p, (0,) * p)

    @classmethod
    def one(cls, p: int) -> "GroupRingElem":
        return cls.monomial(0, p)

    @classmethod
    def monomial(cls, k: int, p: int, coeff: int = 1) -> "GroupRingElem":
        c = [0] * p
        c[k % p] = coeff
        return cls(p, tuple(c))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], p: int) -> "GroupRingElem":
        """Sum of t^e over ``exponents`` (the usual shape of a state-sum)."""
        c = [0] * p
        for e in exponents:
            c[int(e) % p] += 1
        return cls(p, tuple(c))

    @classmethod
    def parse(cls, text: str, p: int) -> "GroupRingElem":
        """Parse strings such as ``"48 + 16t"``, ``"1 - t^2"`` or ``"t^-1"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        c = [0] * p
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse group ring element {text!r} at {s[pos:]!r}")
            sign, digits, tpart, exp = m.groups()
            if not digits and not tpart:
                raise ValueError(f"dangling sign in {text!r}")
            if pos > 0 and not sign:
                raise ValueError(f"missing operator in {text!r}")
            coeff = int(digits) if digits else 1
            if sign == "-":
                coeff = -coeff
            if tpart is None:
                k = 0
            elif exp is None:
                k = 1
            else:
                k = int(exp)
            c[k % p] += coeff
            pos = m.end()
        return cls(p, tuple(c))

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "GroupRingElem"):
        if self.p != other.p:
            raise ModulusMismatch(f"cannot combine Z[t]/(t^{self.p}-1) with Z[t]/(t^{other.p}-1)")

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.monomial(0, self.p, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        self._check(other)
        return GroupRingElem(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.monomial(0, self.p, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.p, tuple(other * a for a in self.coeffs))
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return GroupRingElem(p, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible here")
            (e, c), = ((i, c) for i, c in enumerate(self.coeffs) if c)
            if c not in (1, -1):
                raise ValueError("only monomials with unit coefficient are invertible")
            return GroupRingElem.monomial(e * k, self.p, c ** (-k))
        result = GroupRingElem.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "GroupRingElem":
        """Multiply by t^k (a cyclic rotation of the coefficients)."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(i + k) % p] = a
        return GroupRingElem(p, tuple(out))

    # queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def augmentation(self) -> int:
        """Sum of coefficients (the image under t -> 1)."""
        return sum(self.coeffs)

    def exponent(self) -> int:
        """k for an element equal to t^k; raises otherwise."""
        if not self.is_monomial() or self.augmentation() != 1:
            raise ValueError(f"{self} is not a monomial t^k")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                tt = "t" if k == 1 else f"t^{k}"
                body = tt if mag == 1 else f"{mag}{tt}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"GroupRingElem({str(self)!r}, p={self.p})"


def gr_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a + b


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a * b


def gr_power(k: int, p: int) -> GroupRingElem:
    """The monomial t^k in Z[t]/(t^p - 1); negative k allowed."""
    return GroupRingElem.monomial(k, p)


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``row_ops @ A @ col_ops == diag(d)`` with unimodular transforms.

    ``d`` has length ``min(rows, cols)``; nonzero entries come first and each
    divides the next.
    """

    d: tuple[int, ...]
    rank: int
    row_ops: tuple[tuple[int, ...], ...]
    col_ops: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    def diagonal_matrix(self) -> list[list[int]]:
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, v in enumerate(self.d):
            D[i][i] = v
        return D


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, np.ndarray):
        if A.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return [[int(x) for x in row] for row in A.tolist()]
    return [[int(x) for x in row] for row in A]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf(A, transforms: bool, shape=None):
    M = _as_rows(A)
    m = len(M) if shape is None else shape[0]
    n = (len(M[0]) if M else 0) if shape is None else shape[1]
    P = _identity(m) if transforms else None
    Q = _identity(n) if transforms else None

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            if transforms:
                P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            if transforms:
                for row in Q:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q, start):
        # row_dst -= q * row_src
        rd, rs = M[dst], M[src]
        for j in range(start, n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if transforms:
            pd, ps = P[dst], P[src]
            for j in range(m):
                if ps[j]:
                    pd[j] -= q * ps[j]

    def add_col(dst, src, q, start):
        # col_dst -= q * col_src
        for i in range(start, m):
            row = M[i]
            if row[src]:
                row[dst] -= q * row[src]
        if transforms:
            for row in Q:
                if row[src]:
                    row[dst] -= q * row[src]

    d = []
    t = 0
    while t < min(m, n):
        # smallest |entry| in the trailing block, ties broken by (row, col)
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = M[i][t]
                if v:
                    add_row(i, t, v // piv, t)
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                v = M[t][j]
                if v:
                    add_col(j, t, v // piv, t)
                    if M[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    v = M[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t + 1, n):
                    v = M[t][j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # pivot must divide the whole trailing block
            bad = None
            for i in range(t + 1, m):
                row = M[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1, t)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if transforms:
                P[t] = [-x for x in P[t]]
        d.append(M[t][t])
        t += 1
    rank = len(d)
    d.extend([0] * (min(m, n) - rank))
    return tuple(d), rank, P, Q, (m, n)


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transforms.

    Pivoting always takes the entry of smallest absolute value in the
    remaining block (ties by row, then column), so the transforms are
    reproducible.
    """
    rows = _as_rows(A)
    m = len(rows)
    n = len(rows[0]) if rows else 0
    d, rank, P, Q, shape = _snf(rows, True, (m, n))
    return SmithDecomposition(
        d=d,
        rank=rank,
        row_ops=tuple(tuple(r) for r in P),
        col_ops=tuple(tuple(r) for r in Q),
        shape=shape,
    )


def invariant_factors(A, shape=None) -> tuple[int, ...]:
    """Nonzero invariant factors only; skips building the transforms."""
    rows = _as_rows(A)
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    d, rank, _, _, _ = _snf(rows, False, shape)
    return d[:rank]


def integer_kernel(A, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : A x = 0}.

    The basis comes from the trailing columns of the column transform, so it
    spans the full (saturated) kernel lattice.
    """
    rows = _as_rows(A)
    n = len(rows[0]) if rows else (ncols or 0)
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    snf = smith_normal_form(rows)
    Q = snf.col_ops
    return [tuple(Q[i][j] for i in range(n)) for j in range(snf.rank, n)]


def solve_integer(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b``, or None when there is none."""
    rows = _as_rows(A)
    m = len(rows)
    if m != len(b):
        raise ValueError("right-hand side has the wrong length")
    n = len(rows[0]) if rows else 0
    snf = smith_normal_form(rows)
    Pb = [sum(pij * bj for pij, bj in zip(prow, b)) for prow in snf.row_ops]
    y = [0] * n
    for i in range(m):
        di = snf.d[i] if i < len(snf.d) else 0
        if di == 0:
            if Pb[i] != 0:
                return None
        else:
            if Pb[i] % di:
                return None
            y[i] = Pb[i] // di
    Q = snf.col_ops
    return tuple(sum(Q[i][j] * y[j] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Linear algebra over Z_p
# ---------------------------------------------------------------------------


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime; field linear algebra needs a prime")


def _rref_mod_p(A: np.ndarray, p: int):
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod_p(A, p: int) -> int:
    _require_prime(p)
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(_rref_mod_p(A, p)[1])


def kernel_mod_p(A, p: int) -> np.ndarray:
    """Null space basis of ``A`` over Z_p, one basis vector per row."""
    _require_prime(p)
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = _rref_mod_p(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(pivots):
            basis[k, c] = (-R[r, f]) % p
    return basis
