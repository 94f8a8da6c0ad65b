"""Braid diagrams, quandle colorings and cocycle state-sums.

Strands run downward from the top of the braid.  A positive letter sigma_i
has the strand entering at position i+1 passing over, so colors (a, b) at
positions (i, i+1) become (b, a*b) and the crossing weight is phi(a, b).  A
negative letter has the left strand over: (a, b) becomes (b *^-1 a, a) with
weight phi(b *^-1 a, a)^-1.

Strands may also be oriented upward (``orientation`` entry -1).  This is how
the antiparallel tangles are built.  At a crossing the under strand is acted
on by the over color in the direction of the over strand's normal, and the
weight pair is (under-arc color the normal points away from, over color).

Colorings of every top vector are propagated at once with numpy, which keeps
all example-scale sums well under a millisecond per braid.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coeff import GroupRingElem, ModulusMismatch
from .complex import Cochain, is_cocycle
from .quandle import FiniteQuandle

__all__ = [
    "MAX_TOP_VECTORS",
    "BraidParseError",
    "NotACocycleWarning",
    "ShadowInconsistency",
    "BraidTangle",
    "Crossing",
    "ArcColoring",
    "ShadowColoring",
    "StateSum",
    "parse_braid",
    "format_braid",
    "propagate",
    "closure_colorings",
    "count_colorings",
    "state_sum_2",
    "shadow_extend",
    "shadow_colorings",
    "state_sum_3_shadow",
    "tangle_state_sum",
    "all_tops",
]

MAX_TOP_VECTORS = 10**6

StateSum = GroupRingElem


class BraidParseError(ValueError):
    pass


class NotACocycleWarning(UserWarning):
    pass


class ShadowInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class BraidTangle:
    """A braid word on ``width`` strands, either closed or read as a tangle.

    ``word`` holds (generator index, sign) pairs with 1-based indices.
    ``orientation`` gives +1 (down) or -1 (up) for each top position.
    """

    width: int
    word: tuple[tuple[int, int], ...] = ()
    closed: bool = True
    orientation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("braid width must be at least 1")
        word = tuple((int(i), int(s)) for i, s in self.word)
        for i, s in word:
            if not 1 <= i < self.width:
                raise ValueError(f"generator index {i} out of range for width {self.width}")
            if s not in (1, -1):
                raise ValueError(f"crossing sign must be +1 or -1, got {s}")
        object.__setattr__(self, "word", word)
        orient = self.orientation
        if orient is not None:
            orient = tuple(int(o) for o in orient)
            if len(orient) != self.width or any(o not in (1, -1) for o in orient):
                raise ValueError("orientation must list +1 or -1 for every strand")
            if all(o == 1 for o in orient):
                orient = None
        object.__setattr__(self, "orientation", orient)
        if self.closed and orient is not None and self.bottom_orientation() != orient:
            raise ValueError("orientation is not consistent around the closure")

    @property
    def orient(self) -> tuple[int, ...]:
        return self.orientation or (1,) * self.width

    @property
    def downward(self) -> bool:
        return self.orientation is None

    def permutation(self) -> tuple[int, ...]:
        """perm[j] = top position of the strand ending at bottom position j."""
        perm = list(range(self.width))
        for i, _ in self.word:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)

    def bottom_orientation(self) -> tuple[int, ...]:
        o = self.orient
        return tuple(o[k] for k in self.permutation())

    def components(self) -> list[tuple[int, ...]]:
        """Closure components as sets of top positions."""
        perm = self.permutation()
        # the strand leaving bottom j re-enters at top j
        succ = {perm[j]: j for j in range(self.width)}
        seen, comps = set(), []
        for s in range(self.width):
            if s in seen:
                continue
            comp, k = [], s
            while k not in seen:
                seen.add(k)
                comp.append(k)
                k = succ[k]
            comps.append(tuple(sorted(comp)))
        return comps

    def reverse_components(self, which: Sequence[int]) -> "BraidTangle":
        """Reverse the orientation of the closure components with the given indices."""
        comps = self.components()
        o = list(self.orient)
        for c in which:
            for k in comps[c]:
                o[k] = -o[k]
        return BraidTangle(self.width, self.word, self.closed, tuple(o))

    def inverse(self) -> "BraidTangle":
        return BraidTangle(
            self.width,
            tuple((i, -s) for i, s in reversed(self.word)),
            self.closed,
            self.bottom_orientation() if self.orientation else None,
        )

    def mirror(self) -> "BraidTangle":
        return BraidTangle(self.width, tuple((i, -s) for i, s in self.word), self.closed, self.orientation)

    def __mul__(self, other: "BraidTangle") -> "BraidTangle":
        """Stack ``other`` below ``self``."""
        if other.width != self.width:
            raise ValueError("cannot concatenate braids of different widths")
        if other.orient != self.bottom_orientation():
            raise ValueError("orientations do not match at the junction")
        return BraidTangle(self.width, self.word + other.word, self.closed, self.orientation)

    def as_open(self) -> "BraidTangle":
        return BraidTangle(self.width, self.word, False, self.orientation)

    def as_closed(self) -> "BraidTangle":
        return BraidTangle(self.width, self.word, True, self.orientation)

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return format_braid(self)


_HEADER = re.compile(r"^\s*w\s*(\d+)\s*:(.*)$", re.S)


def parse_braid(text: str, closed: bool = True, width: int | None = None) -> BraidTangle:
    """Parse ``w<width>: g1 g2 ...``; each g is a signed generator index.

    Without the ``w<width>:`` prefix the width is 1 + the largest index.
    """
    m = _HEADER.match(text)
    body = text
    if m:
        if width is not None and width != int(m.group(1)):
            raise BraidParseError("width given twice with different values")
        width = int(m.group(1))
        body = m.group(2)
    word = []
    for tok in body.replace(",", " ").split():
        try:
            g = int(tok)
        except ValueError:
            raise BraidParseError(f"malformed braid token {tok!r}") from None
        if g == 0:
            raise BraidParseError("generator index 0 is not allowed")
        word.append((abs(g), 1 if g > 0 else -1))
    if width is None:
        width = 1 + max((i for i, _ in word), default=0)
    if width < 1:
        raise BraidParseError("braid width must be at least 1")
    for i, _ in word:
        if i >= width:
            raise BraidParseError(f"generator index {i} must be below the width {width}")
    return BraidTangle(width, tuple(word), closed)


def format_braid(b: BraidTangle) -> str:
    body = " ".join(str(i * s) for i, s in b.word)
    return f"w{b.width}: {body}".rstrip()


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """One letter of the word after coloring.

    ``position`` is the 0-based left strand position.  ``source`` is the
    under-arc color the over strand's normal points away from.
    """

    position: int
    sign: int
    source: int
    over: int


def _steps(tangle: BraidTangle):
    """Static per-letter data: (left pos, letter sign, over on right?, s, crossing sign)."""
    o = list(tangle.orient)
    out = []
    for i, g in tangle.word:
        left, right = i - 1, i
        over_right = g == 1
        o_over = o[right] if over_right else o[left]
        s = g * o_over
        out.append((left, g, over_right, s, g * o[left] * o[right]))
        o[left], o[right] = o[right], o[left]
    return out


def _run(X: FiniteQuandle, tangle: BraidTangle, tops: np.ndarray):
    """Propagate rows of ``tops``; returns bottoms, levels, sources, overs, signs."""
    T, Ti = X.table, X.inv_table
    cur = np.array(tops, dtype=np.int64, copy=True)
    M = cur.shape[0]
    L = len(tangle.word)
    levels = [cur.copy()]
    sources = np.empty((M, L), dtype=np.int64)
    overs = np.empty((M, L), dtype=np.int64)
    signs = np.empty(L, dtype=np.int64)
    for k, (l, g, over_right, s, sign) in enumerate(_steps(tangle)):
        r = l + 1
        a, b = cur[:, l].copy(), cur[:, r].copy()
        over, under = (b, a) if over_right else (a, b)
        moved = T[under, over] if s == 1 else Ti[under, over]
        src = under if s == 1 else moved
        if over_right:
            cur[:, l], cur[:, r] = over, moved
        else:
            cur[:, l], cur[:, r] = moved, over
        sources[:, k] = src
        overs[:, k] = over
        signs[k] = sign
        levels.append(cur.copy())
    return cur, levels, sources, overs, signs


def _check_top(X: FiniteQuandle, tangle: BraidTangle, top) -> tuple[int, ...]:
    top = tuple(int(c) for c in top)
    if len(top) != tangle.width:
        raise ValueError(f"top vector has length {len(top)}, braid width is {tangle.width}")
    if any(not 0 <= c < X.n for c in top):
        raise ValueError(f"top colors must lie in 0..{X.n - 1}")
    return top


def propagate(tangle: BraidTangle, X: FiniteQuandle, top: Sequence[int]):
    """Push a top color vector through the word.

    Returns (bottom vector, crossing log); the log lists a ``Crossing`` per
    letter.
    """
    top = _check_top(X, tangle, top)
    bottom, _, src, ov, sg = _run(X, tangle, np.array([top]))
    log = [
        Crossing(i - 1, int(sg[k]), int(src[0, k]), int(ov[0, k]))
        for k, (i, _) in enumerate(tangle.word)
    ]
    return tuple(int(c) for c in bottom[0]), log


def all_tops(N: int, w: int) -> np.ndarray:
    if N**w > MAX_TOP_VECTORS:
        raise ValueError(f"{N}^{w} top vectors exceeds the enumeration guard of {MAX_TOP_VECTORS}")
    if w == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((N,) * w).reshape(w, -1).T.astype(np.int64)


def _closed_data(tangle: BraidTangle, X: FiniteQuandle):
    if not tangle.closed:
        raise ValueError("closure colorings need a closed braid")
    tops = all_tops(X.n, tangle.width)
    bottom, levels, src, ov, sg = _run(X, tangle, tops)
    keep = (bottom == tops).all(axis=1)
    return tops[keep], [lv[keep] for lv in levels], src[keep], ov[keep], sg


@dataclass(frozen=True)
class ArcColoring:
    tangle: BraidTangle
    X: FiniteQuandle
    top: tuple[int, ...]
    levels: tuple[tuple[int, ...], ...]
    log: tuple[Crossing, ...]

    @property
    def bottom(self) -> tuple[int, ...]:
        return self.levels[-1]


def closure_colorings(tangle: BraidTangle, X: FiniteQuandle) -> list[ArcColoring]:
    tops, levels, src, ov, sg = _closed_data(tangle, X)
    out = []
    for m in range(tops.shape[0]):
        log = tuple(
            Crossing(i - 1, int(sg[k]), int(src[m, k]), int(ov[m, k]))
            for k, (i, _) in enumerate(tangle.word)
        )
        lv = tuple(tuple(int(c) for c in level[m]) for level in levels)
        out.append(ArcColoring(tangle, X, lv[0], lv, log))
    return out


def count_colorings(tangle: BraidTangle, X: FiniteQuandle) -> int:
    return int(_closed_data(tangle, X)[0].shape[0])


# ---------------------------------------------------------------------------
# state-sums
# ---------------------------------------------------------------------------


def _check_cochain(f: Cochain, X: FiniteQuandle, degree: int, p: int | None):
    if f.n != degree:
        raise ValueError(f"expected a {degree}-cochain, got degree {f.n}")
    if f.X != X:
        raise ValueError("cochain is defined on a different quandle")
    if p is not None and p != f.p:
        raise ModulusMismatch(f"cochain has modulus {f.p}, requested {p}")
    if not is_cocycle(f):
        warnings.warn(f"the {degree}-cochain is not a cocycle; the sum need not be an invariant", NotACocycleWarning, stacklevel=3)


def _tally(exponents: np.ndarray, p: int) -> GroupRingElem:
    counts = np.bincount(np.asarray(exponents, dtype=np.int64) % p, minlength=p)
    return GroupRingElem(p, tuple(int(c) for c in counts))


def state_sum_2(tangle: BraidTangle, X: FiniteQuandle, phi: Cochain, p: int | None = None) -> StateSum:
    """Sum over closure colorings of the product of t^(+-phi(source, over))."""
    _check_cochain(phi, X, 2, p)
    _, _, src, ov, sg = _closed_data(tangle, X)
    exps = (phi.values[src, ov] * sg).sum(axis=1) if src.size else np.zeros(src.shape[0], dtype=np.int64)
    return _tally(exps, phi.p)


@dataclass(frozen=True)
class ShadowColoring:
    """Arc coloring plus region colors; regions[k][j] lies left of strand j at level k."""

    arc: ArcColoring
    leftmost_region: int
    region_colors: tuple[tuple[int, ...], ...]


def _regions(X: FiniteQuandle, left: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Region colors at one level for downward strands."""
    M, w = colors.shape
    R = np.empty((M, w + 1), dtype=np.int64)
    R[:, 0] = left
    for j in range(w):
        R[:, j + 1] = X.table[R[:, j], colors[:, j]]
    return R


def _require_downward(tangle: BraidTangle):
    if not tangle.downward:
        raise ValueError("shadow colorings are supported for downward-oriented braids only")


def shadow_extend(coloring: ArcColoring, leftmost: int) -> ShadowColoring:
    """Extend an arc coloring by propagating region colors from the leftmost region."""
    tangle, X = coloring.tangle, coloring.X
    _require_downward(tangle)
    if not 0 <= leftmost < X.n:
        raise ValueError("leftmost region color out of range")
    regions = [
        tuple(int(c) for c in _regions(X, np.array([leftmost]), np.array([lv]))[0])
        for lv in coloring.levels
    ]
    # across letter k only the region between the two crossing strands may change
    for k, (i, _) in enumerate(tangle.word):
        before, after = regions[k], regions[k + 1]
        for j in range(tangle.width + 1):
            if j != i and before[j] != after[j]:
                raise ShadowInconsistency(f"region {j} changes across crossing {k} ({before[j]} -> {after[j]})")
    if tangle.closed and regions[0] != regions[-1]:
        raise ShadowInconsistency("region colors do not close up around the braid closure")
    return ShadowColoring(coloring, leftmost, tuple(regions))


def shadow_colorings(tangle: BraidTangle, X: FiniteQuandle) -> list[ShadowColoring]:
    return [shadow_extend(c, q) for c in closure_colorings(tangle, X) for q in range(X.n)]


def _shadow_exponents(tangle: BraidTangle, X: FiniteQuandle, theta: Cochain, tops: np.ndarray, lefts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Shadow weight exponents for paired rows (tops[m], lefts[m]); also returns bottoms."""
    T, Ti = X.table, X.inv_table
    cur = np.array(tops, dtype=np.int64, copy=True)
    R = _regions(X, lefts, cur)
    exps = np.zeros(cur.shape[0], dtype=np.int64)
    for i, g in tangle.word:
        l, r = i - 1, i
        a, b = cur[:, l].copy(), cur[:, r].copy()
        q0 = R[:, l]
        if g == 1:
            exps += theta.values[q0, a, b]
            cur[:, l], cur[:, r] = b, T[a, b]
        else:
            src = Ti[b, a]
            exps -= theta.values[q0, src, a]
            cur[:, l], cur[:, r] = src, a
        R[:, r] = T[R[:, l], cur[:, l]]
    return exps, cur


def state_sum_3_shadow(tangle: BraidTangle, X: FiniteQuandle, theta: Cochain, p: int | None = None) -> StateSum:
    """Sum over shadow colorings of the product of t^(+-theta(q0, source, over))."""
    _require_downward(tangle)
    _check_cochain(theta, X, 3, p)
    tops = _closed_data(tangle, X)[0]
    M, N = tops.shape[0], X.n
    rows = np.repeat(tops, N, axis=0)
    lefts = np.tile(np.arange(N, dtype=np.int64), M)
    exps, _ = _shadow_exponents(tangle, X, theta, rows, lefts)
    return _tally(exps, theta.p)


def tangle_state_sum(
    tangle: BraidTangle,
    X: FiniteQuandle,
    cocycle: Cochain,
    top: Sequence[int],
    shadow_left: int | None = None,
    p: int | None = None,
):
    """(bottom vector, monomial weight) of the unique coloring with the given top."""
    top = _check_top(X, tangle, top)
    if p is not None and p != cocycle.p:
        raise ModulusMismatch(f"cochain has modulus {cocycle.p}, requested {p}")
    if cocycle.X != X:
        raise ValueError("cochain is defined on a different quandle")
    if shadow_left is None:
        if cocycle.n != 2:
            raise ValueError("a tangle state-sum without a shadow needs a 2-cochain")
        bottom, _, src, ov, sg = _run(X, tangle, np.array([top]))
        e = int((cocycle.values[src[0], ov[0]] * sg).sum()) if len(tangle.word) else 0
    else:
        if cocycle.n != 3:
            raise ValueError("a shadow tangle state-sum needs a 3-cochain")
        _require_downward(tangle)
        if not 0 <= shadow_left < X.n:
            raise ValueError("shadow-left color out of range")
        exps, bottom = _shadow_exponents(tangle, X, cocycle, np.array([top]), np.array([shadow_left]))
        e = int(exps[0])
    return tuple(int(c) for c in bottom[0]), GroupRingElem.monomial(e, cocycle.p)
