"""Skein relations for cocycle invariants.

Tangles with the same boundary behaviour (every top coloring forces the same
bottom coloring) satisfy a relation sum_i f_i(t) Phi(T_i) = 0 whenever the
f_i annihilate every column of tangle values.  Here the unknowns f_i live in
the integral group ring Z[Z_p], each tuple of tangle values gives p integer
equations, and the full solution lattice is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coeff import GroupRingElem, integer_kernel, solve_integer
from .complex import Cochain
from .diagram import (
    BraidTangle,
    _run,
    _shadow_exponents,
    _require_downward,
    all_tops,
    format_braid,
)
from .quandle import AlexanderRing, FiniteQuandle

__all__ = [
    "NotAlexander",
    "BurauMatrix",
    "burau_matrix",
    "ProfileResult",
    "boundary_profile_equal",
    "SkeinSystem",
    "solve_skein",
    "solve_skein_shadow",
    "antiparallel_tangle",
    "antiparallel_colors",
    "antiparallel_colors_by_propagation",
    "antiparallel_weight",
    "antiparallel_weight_by_propagation",
    "identity_burau_words",
]


class NotAlexander(ValueError):
    pass


def _ring(X: FiniteQuandle) -> AlexanderRing:
    if X.ring is None:
        raise NotAlexander(f"{X.label} has no Alexander ring structure")
    return X.ring


# ---------------------------------------------------------------------------
# Burau matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BurauMatrix:
    """A w x w matrix over an Alexander ring, entries as ring element indices."""

    ring: AlexanderRing = field(compare=False, repr=False)
    entries: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, ring: AlexanderRing, w: int) -> "BurauMatrix":
        return cls(ring, tuple(tuple(ring.one if i == j else ring.zero for j in range(w)) for i in range(w)))

    def __matmul__(self, other: "BurauMatrix") -> "BurauMatrix":
        R, w = self.ring, self.width
        out = []
        for i in range(w):
            row = []
            for j in range(w):
                acc = R.zero
                for k in range(w):
                    acc = R.add(acc, R.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return BurauMatrix(R, tuple(out))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        R = self.ring
        out = []
        for row in self.entries:
            acc = R.zero
            for a, x in zip(row, v):
                acc = R.add(acc, R.mul(a, int(x)))
            out.append(acc)
        return tuple(out)

    def is_identity(self) -> bool:
        return self == BurauMatrix.identity(self.ring, self.width)

    def __str__(self):
        cells = [[self.ring.format(e) for e in row] for row in self.entries]
        wd = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(wd) for c in row) + " ]" for row in cells)


def _letter_matrix(R: AlexanderRing, w: int, i: int, s: int) -> BurauMatrix:
    M = [list(r) for r in BurauMatrix.identity(R, w).entries]
    l, r = i - 1, i
    if s == 1:
        block = ((R.zero, R.one), (R.T, R.sub(R.one, R.T)))
    else:
        block = ((R.sub(R.one, R.T_inv), R.T_inv), (R.one, R.zero))
    for a in range(2):
        for b in range(2):
            M[(l, r)[a]][(l, r)[b]] = block[a][b]
    return BurauMatrix(R, tuple(tuple(row) for row in M))


def burau_matrix(tangle: BraidTangle, X: FiniteQuandle) -> BurauMatrix:
    """Matrix of the braid's action on color vectors of an Alexander quandle."""
    R = _ring(X)
    _require_downward(tangle)
    M = BurauMatrix.identity(R, tangle.width)
    for i, s in tangle.word:
        M = _letter_matrix(R, tangle.width, i, s) @ M
    return M


# ---------------------------------------------------------------------------
# boundary behaviour
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileResult:
    equal: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.equal


def _bottoms(tangle: BraidTangle, X: FiniteQuandle, tops: np.ndarray) -> np.ndarray:
    return _run(X, tangle, tops)[0]


def boundary_profile_equal(tangles: Sequence[BraidTangle], X: FiniteQuandle) -> ProfileResult:
    """Do all tangles send every top vector to the same bottom vector?

    Region colors at the bottom are fixed by the leftmost region and the
    bottom arc colors, so equal arc profiles also give equal shadow profiles.
    """
    if not tangles:
        raise ValueError("no tangles given")
    w = tangles[0].width
    if any(t.width != w for t in tangles):
        raise ValueError("tangles have different widths")
    if any(t.orient != tangles[0].orient for t in tangles):
        raise ValueError("tangles have different top orientations")
    tops = all_tops(X.n, w)
    ref = _bottoms(tangles[0], X, tops)
    bad = np.zeros(tops.shape[0], dtype=bool)
    for t in tangles[1:]:
        bad |= (_bottoms(t, X, tops) != ref).any(axis=1)
    if bad.any():
        return ProfileResult(False, tuple(int(c) for c in tops[np.argmax(bad)]))
    return ProfileResult(True)


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


def _elem_from_vector(v: Sequence[int], p: int) -> GroupRingElem:
    return GroupRingElem(p, tuple(int(c) for c in v))


@dataclass
class SkeinSystem:
    """Value tuples, the integer system they generate, and its solution lattice.

    ``value_tuples[r][i]`` is the exponent of Phi(T_i) on boundary class r.
    Unknown f_i has integer coordinates at indices i*p .. i*p+p-1 (coefficient
    of t^0 .. t^(p-1)).
    """

    tangles: list[BraidTangle]
    X: FiniteQuandle
    cocycle: Cochain
    p: int
    shadow: bool
    value_tuples: list[tuple[int, ...]]
    representatives: list[tuple[int, ...]]
    class_sizes: list[int]
    matrix: list[list[int]]
    basis: list[tuple[GroupRingElem, ...]]

    @property
    def m(self) -> int:
        return len(self.tangles)

    def to_vector(self, fs: Sequence) -> list[int]:
        if len(fs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(fs)}")
        out = []
        for f in fs:
            f = f if isinstance(f, GroupRingElem) else GroupRingElem.parse(str(f), self.p)
            if f.p != self.p:
                raise ValueError("coefficient lives in a different group ring")
            out.extend(f.coeffs)
        return out

    def annihilates(self, fs: Sequence) -> bool:
        """Does sum_i f_i t^(e_i) vanish for every value tuple?"""
        v = self.to_vector(fs)
        return all(sum(a * x for a, x in zip(row, v)) == 0 for row in self.matrix)

    def contains(self, fs: Sequence) -> bool:
        """Is (f_1, ..., f_m) an integer combination of the basis?"""
        v = self.to_vector(fs)
        if not self.basis:
            return not any(v)
        cols = [self.to_vector(b) for b in self.basis]
        A = [[c[r] for c in cols] for r in range(len(v))]
        return solve_integer(A, v) is not None

    def equations(self) -> list[str]:
        """Each value tuple as a group-ring equation in f_1..f_m."""
        out = []
        for tup in self.value_tuples:
            parts = []
            for i, e in enumerate(tup):
                e %= self.p
                parts.append(f"f{i + 1}" if e == 0 else (f"t f{i + 1}" if e == 1 else f"t^{e} f{i + 1}"))
            out.append(" + ".join(parts) + " = 0")
        return out

    def transcript(self) -> list[str]:
        lines = ["tangles:"]
        lines += [f"  T{i + 1} = {format_braid(t)}" for i, t in enumerate(self.tangles)]
        lines.append(f"quandle: {self.X.label}   cocycle degree {self.cocycle.n}, p = {self.p}" + ("   (shadow)" if self.shadow else ""))
        lines.append("boundary profile: equal")
        head = "top + leftmost" if self.shadow else "top"
        lines.append(f"value tuples ({len(self.value_tuples)} classes; representative {head}, class size):")
        for tup, rep, size in zip(self.value_tuples, self.representatives, self.class_sizes):
            vals = ", ".join(str(GroupRingElem.monomial(e, self.p)) for e in tup)
            lines.append(f"  ({vals})   rep {rep}   size {size}")
        lines.append("equations:")
        lines += [f"  {eq}" for eq in self.equations()]
        lines.append(f"integer system: {len(self.matrix)} x {self.m * self.p}")
        for row in self.matrix:
            lines.append("  " + " ".join(f"{a:2d}" for a in row))
        lines.append(f"solution basis ({len(self.basis)}):")
        for b in self.basis:
            lines.append("  (" + ", ".join(str(f) for f in b) + ")")
        return lines


def _assemble(tangles, X, cocycle, p, shadow, exps: np.ndarray, keys: np.ndarray) -> SkeinSystem:
    exps = exps % p
    uniq, first, counts = np.unique(exps, axis=0, return_index=True, return_counts=True)
    m = len(tangles)
    rows = []
    for tup in uniq:
        # coefficient of t^j in sum_i t^(e_i) f_i is sum_i c_{i, j - e_i}
        for j in range(p):
            row = [0] * (m * p)
            for i, e in enumerate(tup):
                row[i * p + (j - int(e)) % p] += 1
            rows.append(row)
    kernel = integer_kernel(rows, m * p)
    basis = [tuple(_elem_from_vector(v[i * p:(i + 1) * p], p) for i in range(m)) for v in kernel]
    return SkeinSystem(
        tangles=list(tangles),
        X=X,
        cocycle=cocycle,
        p=p,
        shadow=shadow,
        value_tuples=[tuple(int(e) for e in t) for t in uniq],
        representatives=[tuple(int(c) for c in keys[k]) for k in first],
        class_sizes=[int(c) for c in counts],
        matrix=rows,
        basis=basis,
    )


def _prepare(tangles, X, cocycle, p, degree):
    tangles = [t.as_open() for t in tangles]
    if not tangles:
        raise ValueError("no tangles given")
    if cocycle.n != degree:
        raise ValueError(f"expected a {degree}-cochain, got degree {cocycle.n}")
    if cocycle.X != X:
        raise ValueError("cochain is defined on a different quandle")
    p = cocycle.p if p is None else p
    if p != cocycle.p:
        raise ValueError(f"cochain has modulus {cocycle.p}, requested {p}")
    prof = boundary_profile_equal(tangles, X)
    if not prof:
        raise ValueError(f"tangles differ in boundary behaviour; witness top {prof.witness}")
    return tangles, p


def solve_skein(tangles: Sequence[BraidTangle], X: FiniteQuandle, phi: Cochain, p: int | None = None) -> SkeinSystem:
    """Solution lattice of sum_i f_i Phi(T_i) = 0 for 2-cocycle tangle values."""
    tangles, p = _prepare(tangles, X, phi, p, 2)
    tops = all_tops(X.n, tangles[0].width)
    cols = []
    for t in tangles:
        _, _, src, ov, sg = _run(X, t, tops)
        cols.append((phi.values[src, ov] * sg).sum(axis=1) if len(t.word) else np.zeros(tops.shape[0], dtype=np.int64))
    return _assemble(tangles, X, phi, p, False, np.stack(cols, axis=1), tops)


def solve_skein_shadow(tangles: Sequence[BraidTangle], X: FiniteQuandle, theta: Cochain, p: int | None = None) -> SkeinSystem:
    """As solve_skein, with shadow weights and the leftmost region ranging over X."""
    tangles, p = _prepare(tangles, X, theta, p, 3)
    for t in tangles:
        _require_downward(t)
    tops = all_tops(X.n, tangles[0].width)
    M, N = tops.shape[0], X.n
    rows = np.repeat(tops, N, axis=0)
    lefts = np.tile(np.arange(N, dtype=np.int64), M)
    cols = [_shadow_exponents(t, X, theta, rows, lefts)[0] for t in tangles]
    keys = np.column_stack([rows, lefts])
    return _assemble(tangles, X, theta, p, True, np.stack(cols, axis=1), keys)


# ---------------------------------------------------------------------------
# antiparallel strands
# ---------------------------------------------------------------------------


def antiparallel_tangle(n: int) -> BraidTangle:
    """P_n: two oppositely oriented strands twisted by 2|n| crossings.

    The left strand runs upward (color y at the top), the right strand
    runs downward (color x at the top).  With this orientation the letters
    sigma_1^-1 give positive crossings, so P_n is sigma_1^(-2n).
    """
    g = -1 if n >= 0 else 1
    return BraidTangle(2, ((1, g),) * (2 * abs(n)), closed=False, orientation=(-1, 1))


def antiparallel_colors(X: FiniteQuandle, x: int, y: int, n: int) -> tuple[int, int]:
    """Closed form (x_n, y_n) = (x + n(T-1)(x-y), y + n(T-1)(x-y))."""
    R = _ring(X)
    d = R.mul(R.mul(R.scalar(n), R.sub(R.T, R.one)), R.sub(x, y))
    return R.add(x, d), R.add(y, d)


def antiparallel_colors_by_propagation(X: FiniteQuandle, x: int, y: int, n: int) -> tuple[int, int]:
    from .diagram import propagate

    (yb, xb), _ = propagate(antiparallel_tangle(n), X, (y, x))
    return xb, yb


def antiparallel_weight(X: FiniteQuandle, phi: Cochain, x: int, y: int, n: int) -> GroupRingElem:
    """Weight of P_n from the closed-form colors.

    For n > 0 this is prod_{k=0}^{n-1} phi(x_k, y_k) phi(y_{k+1}, x_{k+1});
    for n < 0 the inverse of the matching product over k = n+1 .. 0.
    """
    if phi.n != 2:
        raise ValueError("antiparallel weights need a 2-cochain")
    xs = {k: antiparallel_colors(X, x, y, k) for k in range(min(n, 0) - 1, max(n, 0) + 2)}
    e = 0
    if n > 0:
        for k in range(n):
            e += phi(xs[k][0], xs[k][1]) + phi(xs[k + 1][1], xs[k + 1][0])
    else:
        for k in range(n + 1, 1):
            e -= phi(xs[k][1], xs[k][0]) + phi(xs[k - 1][0], xs[k - 1][1])
    return GroupRingElem.monomial(e, phi.p)


def antiparallel_weight_by_propagation(X: FiniteQuandle, phi: Cochain, x: int, y: int, n: int) -> GroupRingElem:
    from .diagram import tangle_state_sum

    return tangle_state_sum(antiparallel_tangle(n), X, phi, (y, x))[1]


# ---------------------------------------------------------------------------
# searching braid words
# ---------------------------------------------------------------------------


def identity_burau_words(X: FiniteQuandle, width: int, max_len: int, min_len: int = 1) -> Iterable[BraidTangle]:
    """Freely reduced braid words whose Burau matrix over X is the identity."""
    letters = [(i, s) for i in range(1, width) for s in (1, -1)]
    for L in range(min_len, max_len + 1):
        for word in itertools.product(letters, repeat=L):
            if any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(word, word[1:])):
                continue
            t = BraidTangle(width, word, closed=False)
            if burau_matrix(t, X).is_identity():
                yield t
