"""Finite quandles given by operation tables.

Elements are always ``0..n-1``.  ``X.table[a, b]`` is ``a * b`` and
``X.inv_table[a, b]`` is the unique ``c`` with ``c * b == a``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "QuandleError",
    "AxiomViolation",
    "FiniteQuandle",
    "AlexanderRing",
    "QuandleHom",
    "OrbitDecomposition",
    "check_axioms",
    "trivial",
    "dihedral",
    "alexander",
    "from_table",
    "build_quandle",
    "quandle_op",
    "quandle_op_inv",
    "act_by_word",
    "inner_automorphism",
    "is_homomorphism",
    "orbit_decomposition",
    "quandle_isomorphic",
    "parse_laurent",
    "format_quandle",
    "parse_quandle_text",
    "read_quandle",
    "write_quandle",
]


class QuandleError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str  # "I", "II" or "III"
    witness: tuple[int, ...]

    def __str__(self):
        return f"axiom {self.axiom} fails at {self.witness}"


def _validate_shape(table) -> np.ndarray:
    T = np.asarray(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise QuandleError(f"operation table must be square, got shape {T.shape}")
    n = T.shape[0]
    if n == 0:
        raise QuandleError("empty operation table")
    if not np.issubdtype(T.dtype, np.integer):
        raise QuandleError("operation table entries must be integers")
    if T.min() < 0 or T.max() >= n:
        raise QuandleError(f"operation table entries must lie in 0..{n - 1}")
    return T.astype(np.int64)


def check_axioms(table, rack: bool = False) -> list[AxiomViolation]:
    """Every violated instance of the quandle axioms; empty iff a quandle.

    With ``rack=True`` idempotency (axiom I) is not checked.
    """
    T = _validate_shape(table)
    n = T.shape[0]
    out = []
    if not rack:
        for a in range(n):
            if T[a, a] != a:
                out.append(AxiomViolation("I", (a,)))
    for b in range(n):
        seen = {}
        for a in range(n):
            c = int(T[a, b])
            if c in seen:
                out.append(AxiomViolation("II", (seen[c], a, b)))
            else:
                seen[c] = a
    idx = np.arange(n)
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    lhs = T[T[a, b], c]
    rhs = T[T[a, c], T[b, c]]
    for w in np.argwhere(lhs != rhs):
        out.append(AxiomViolation("III", tuple(int(x) for x in w)))
    return out


class AlexanderRing:
    """The finite ring Z_n[T, T^-1]/(h(T)), elements indexed 0..size-1.

    An element is a polynomial of degree < deg h with coefficients in Z_n;
    its index is sum_k c_k n^k (constant term varies fastest).
    """

    def __init__(self, n: int, h: dict[int, int], label: str | None = None):
        if n < 1:
            raise QuandleError("coefficient modulus must be positive")
        h = {k: c % n for k, c in h.items() if c % n}
        self.n = n
        self.label = label
        if not h:
            raise QuandleError("h(T) vanishes mod n; the quotient is infinite")
        lo, hi = min(h), max(h)
        if math.gcd(h[lo], n) != 1 or math.gcd(h[hi], n) != 1:
            raise QuandleError(
                f"extreme coefficients of h must be units mod {n}; got {h[lo]} and {h[hi]}"
            )
        d = hi - lo
        poly = [0] * (d + 1)
        for k, c in h.items():
            poly[k - lo] = c
        inv = pow(poly[d], -1, n)
        self.modulus = [(c * inv) % n for c in poly]  # monic, low degree first
        self.degree = d
        self.size = n ** d
        self.vectors = np.array(
            [self._digits(i) for i in range(self.size)], dtype=np.int64
        ).reshape(self.size, d)
        self._weights = np.array([n ** k for k in range(d)], dtype=np.int64)
        self.zero = 0
        self.one = self.from_poly([1])
        self.T = self.from_poly([0, 1])
        self.T_inv = self._find_inverse(self.T)

    def _digits(self, i: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            out.append(i % self.n)
            i //= self.n
        return out

    def _reduce(self, coeffs: Sequence[int]) -> list[int]:
        c = [x % self.n for x in coeffs]
        d = self.degree
        m = self.modulus
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                for j in range(d + 1):
                    c[k - d + j] = (c[k - d + j] - lead * m[j]) % self.n
        return (c + [0] * d)[:d]

    def from_poly(self, coeffs: Sequence[int]) -> int:
        """Index of the residue of sum_k coeffs[k] T^k."""
        if self.degree == 0:
            return 0
        r = self._reduce(coeffs)
        return int(sum(ck * self.n ** k for k, ck in enumerate(r)))

    def from_laurent(self, terms: dict[int, int]) -> int:
        acc = self.zero
        for k, c in terms.items():
            acc = self.add(acc, self.mul(self.scalar(c), self.power(self.T, k)))
        return acc

    def poly(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.vectors[x])

    def scalar(self, c: int) -> int:
        return self.from_poly([c])

    def add(self, x: int, y: int) -> int:
        v = (self.vectors[x] + self.vectors[y]) % self.n
        return int(v @ self._weights)

    def neg(self, x: int) -> int:
        v = (-self.vectors[x]) % self.n
        return int(v @ self._weights)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.degree == 0:
            return 0
        a, b = self.vectors[x], self.vectors[y]
        prod = np.convolve(a, b) % self.n
        return self.from_poly([int(v) for v in prod])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x = self._find_inverse(x)
            k = -k
        r = self.one
        for _ in range(k):
            r = self.mul(r, x)
        return r

    def _find_inverse(self, x: int) -> int:
        for y in range(self.size):
            if self.mul(x, y) == self.one:
                return y
        raise QuandleError(f"{self.format(x)} is not a unit")

    def format(self, x: int) -> str:
        terms = []
        for k, c in enumerate(self.poly(x)):
            if c:
                base = "1" if k == 0 else ("T" if k == 1 else f"T^{k}")
                terms.append(base if c == 1 else (f"{c}" if k == 0 else f"{c}{base}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"AlexanderRing({self.label or self.n})"


class FiniteQuandle:
    """A validated finite quandle (or rack, with ``rack=True``)."""

    def __init__(self, table, label: str = "explicit", rack: bool = False, ring: AlexanderRing | None = None):
        T = _validate_shape(table)
        bad = check_axioms(T, rack=rack)
        if bad:
            raise QuandleError(
                f"not a {'rack' if rack else 'quandle'}: " + "; ".join(str(v) for v in bad[:5])
            )
        n = T.shape[0]
        inv = np.empty_like(T)
        for b in range(n):
            inv[T[:, b], b] = np.arange(n)
        T.setflags(write=False)
        inv.setflags(write=False)
        self.n = n
        self.table = T
        self.inv_table = inv
        self.label = label
        self.rack = rack
        self.ring = ring

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteQuandle({self.label!r}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def _check(self, *elems):
        for e in elems:
            if not 0 <= e < self.n:
                raise QuandleError(f"element {e} out of range 0..{self.n - 1}")

    def op(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.table[a, b])

    def op_inv(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.inv_table[a, b])

    @property
    def is_alexander(self) -> bool:
        return self.ring is not None

    @property
    def is_trivial(self) -> bool:
        return bool((self.table == np.arange(self.n)[:, None]).all())


def from_table(table, label: str = "explicit", rack: bool = False) -> FiniteQuandle:
    return FiniteQuandle(table, label=label, rack=rack)


def trivial(n: int) -> FiniteQuandle:
    idx = np.arange(n)
    return FiniteQuandle(np.repeat(idx[:, None], n, axis=1), label=f"trivial:{n}")


def dihedral(n: int) -> FiniteQuandle:
    idx = np.arange(n)
    # R_n is Z_n[T]/(T+1); degree 1 so element i encodes the residue i
    ring = AlexanderRing(n, {0: 1, 1: 1}, label=f"dihedral:{n}") if n >= 2 else None
    return FiniteQuandle((2 * idx[None, :] - idx[:, None]) % n, label=f"dihedral:{n}", ring=ring)


_LAURENT_TERM = re.compile(r"([+-]?)(\d*)(?:\*?(T)(?:\^\(?(-?\d+)\)?)?)?")


def parse_laurent(text: str) -> dict[int, int]:
    """Parse an integer Laurent polynomial in T, e.g. ``"T^2+T+1"`` or ``"T-5"``."""
    s = text.replace(" ", "")
    if not s:
        raise QuandleError("empty polynomial")
    out: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _LAURENT_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise QuandleError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, digits, tee, exp = m.groups()
        if not digits and not tee:
            raise QuandleError(f"cannot parse polynomial {text!r}")
        if pos > 0 and not sign:
            raise QuandleError(f"missing operator in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if tee is None else (1 if exp is None else int(exp))
        out[k] = out.get(k, 0) + c
        pos = m.end()
    return out


def alexander(n: int, h: str | dict[int, int]) -> FiniteQuandle:
    """The Alexander quandle Z_n[T, T^-1]/(h(T)) with a*b = Ta + (1-T)b."""
    text = h if isinstance(h, str) else None
    terms = parse_laurent(h) if isinstance(h, str) else dict(h)
    label = f"alexander:{n}:{text if text is not None else _format_laurent(terms)}"
    ring = AlexanderRing(n, terms, label=label)
    N = ring.size
    if N > 4096:
        raise QuandleError(f"Alexander quandle with {N} elements is too large")
    one_minus_T = ring.sub(ring.one, ring.T)
    Ta = [ring.mul(ring.T, a) for a in range(N)]
    Ub = [ring.mul(one_minus_T, b) for b in range(N)]
    table = np.array([[ring.add(Ta[a], Ub[b]) for b in range(N)] for a in range(N)], dtype=np.int64)
    return FiniteQuandle(table, label=label, ring=ring)


def _format_laurent(terms: dict[int, int]) -> str:
    parts = []
    for k in sorted(terms, reverse=True):
        c = terms[k]
        if not c:
            continue
        mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
        mag = abs(c)
        body = (str(mag) if k == 0 else (mono if mag == 1 else f"{mag}{mono}"))
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def build_quandle(spec) -> FiniteQuandle:
    """Build from ``trivial:n``, ``dihedral:n``, ``alexander:n:<poly>``, a
    quandle file path, or an explicit table."""
    if not isinstance(spec, str):
        return from_table(spec)
    s = spec.strip()
    kind, _, rest = s.partition(":")
    try:
        if kind == "trivial":
            return trivial(int(rest))
        if kind == "dihedral":
            return dihedral(int(rest))
        if kind == "alexander":
            n, _, poly = rest.partition(":")
            if not poly:
                raise QuandleError("alexander descriptor needs a polynomial: alexander:n:<poly>")
            return alexander(int(n), poly)
    except ValueError as exc:
        if isinstance(exc, QuandleError):
            raise
        raise QuandleError(f"bad quandle descriptor {spec!r}: {exc}") from None
    path = Path(s)
    if path.exists():
        return read_quandle(path)
    raise QuandleError(f"unknown quandle descriptor {spec!r}")


def quandle_op(X: FiniteQuandle, a: int, b: int) -> int:
    return X.op(a, b)


def quandle_op_inv(X: FiniteQuandle, a: int, b: int) -> int:
    return X.op_inv(a, b)


def act_by_word(X: FiniteQuandle, a: int, word: Sequence[tuple[int, int]]) -> int:
    """a * w for w = b1^e1 ... bk^ek, applied left to right."""
    X._check(a)
    for b, e in word:
        X._check(b)
        if e == 1:
            a = int(X.table[a, b])
        elif e == -1:
            a = int(X.inv_table[a, b])
        else:
            raise QuandleError(f"word exponents must be +1 or -1, got {e}")
    return a


def inner_automorphism(X: FiniteQuandle, word: Sequence[tuple[int, int]]) -> np.ndarray:
    """The permutation a -> a * w as an array."""
    return np.array([act_by_word(X, a, word) for a in range(X.n)], dtype=np.int64)


def is_homomorphism(f: Sequence[int], X: FiniteQuandle, Y: FiniteQuandle) -> bool:
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (X.n,):
        raise QuandleError(f"map must have {X.n} entries")
    if f.min() < 0 or f.max() >= Y.n:
        raise QuandleError("map values out of range of the target")
    return bool((f[X.table] == Y.table[f[:, None], f[None, :]]).all())


@dataclass(frozen=True, eq=False)
class QuandleHom:
    source: FiniteQuandle
    target: FiniteQuandle
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if not is_homomorphism(self.map, self.source, self.target):
            raise QuandleError("map is not a quandle homomorphism")

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.n))

    @property
    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and self.is_surjective


@dataclass(frozen=True, eq=False)
class OrbitDecomposition:
    parent: FiniteQuandle
    orbit_of: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    orbit_quandle: FiniteQuandle
    projection: QuandleHom


def orbit_decomposition(X: FiniteQuandle) -> OrbitDecomposition:
    """Orbits under the inner automorphism group and the induced quotient."""
    parent = list(range(X.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(X.n):
        for b in range(X.n):
            ra, rc = find(a), find(int(X.table[a, b]))
            if ra != rc:
                parent[max(ra, rc)] = min(ra, rc)
    roots: dict[int, int] = {}
    orbit_of = []
    for a in range(X.n):
        r = find(a)
        if r not in roots:
            roots[r] = len(roots)
        orbit_of.append(roots[r])
    m = len(roots)
    orbits = tuple(tuple(a for a in range(X.n) if orbit_of[a] == k) for k in range(m))
    table = np.full((m, m), -1, dtype=np.int64)
    for a in range(X.n):
        for b in range(X.n):
            oa, ob, oc = orbit_of[a], orbit_of[b], orbit_of[int(X.table[a, b])]
            if table[oa, ob] == -1:
                table[oa, ob] = oc
            elif table[oa, ob] != oc:
                raise RuntimeError(
                    f"internal error: induced orbit operation ill-defined at ({a}, {b})"
                )
    Q = FiniteQuandle(table, label=f"Orb({X.label})", rack=X.rack)
    proj = QuandleHom(X, Q, tuple(orbit_of))
    return OrbitDecomposition(X, tuple(orbit_of), orbits, Q, proj)


def _signature(X: FiniteQuandle, a: int):
    # cycle type of S(a), fixed points of S(a), size of the stabiliser row
    perm = X.table[:, a]
    seen = [False] * X.n
    cycles = []
    for s in range(X.n):
        if not seen[s]:
            k, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = int(perm[x])
                k += 1
            cycles.append(k)
    fixed_row = int((X.table[a, :] == a).sum())
    return (tuple(sorted(cycles)), fixed_row)


def quandle_isomorphic(X: FiniteQuandle, Y: FiniteQuandle) -> tuple[int, ...] | None:
    """An isomorphism X -> Y as an image tuple, or None."""
    if X.n != Y.n:
        return None
    n = X.n
    sx = [_signature(X, a) for a in range(n)]
    sy = [_signature(Y, a) for a in range(n)]
    if sorted(sx) != sorted(sy):
        return None
    TX, TY = X.table, Y.table

    def extend(f, used):
        # close the partial map under the operation; None on contradiction
        changed = True
        while changed:
            changed = False
            dom = [a for a in range(n) if f[a] >= 0]
            for a in dom:
                for b in dom:
                    c = int(TX[a, b])
                    img = int(TY[f[a], f[b]])
                    if f[c] < 0:
                        if used[img] or sx[c] != sy[img]:
                            return None
                        f[c] = img
                        used[img] = True
                        changed = True
                    elif f[c] != img:
                        return None
        return f

    def search(f, used):
        try:
            a = f.index(-1)
        except ValueError:
            return tuple(f)
        for y in range(n):
            if used[y] or sx[a] != sy[y]:
                continue
            g, u = list(f), list(used)
            g[a] = y
            u[y] = True
            g = extend(g, u)
            if g is not None:
                res = search(g, u)
                if res is not None:
                    return res
        return None

    res = search([-1] * n, [False] * n)
    if res is not None:
        assert is_homomorphism(res, X, Y)
    return res


# ---------------------------------------------------------------------------
# quandle file format
# ---------------------------------------------------------------------------


def format_quandle(X: FiniteQuandle) -> str:
    lines = [f"quandle n={X.n}"]
    for row in X.table:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_quandle_text(text: str, label: str = "explicit") -> FiniteQuandle:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise QuandleError("empty quandle file")
    m = re.fullmatch(r"quandle\s+n=(\d+)", lines[0])
    if m is None:
        raise QuandleError(f"bad quandle header {lines[0]!r}; expected 'quandle n=<order>'")
    n = int(m.group(1))
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise QuandleError(f"expected {n} rows of {n} entries")
    try:
        table = [[int(x) for x in r] for r in rows]
    except ValueError:
        raise QuandleError("quandle table entries must be integers") from None
    return FiniteQuandle(np.array(table, dtype=np.int64), label=label)


def read_quandle(path) -> FiniteQuandle:
    path = Path(path)
    return parse_quandle_text(path.read_text(), label=path.name)


def write_quandle(X: FiniteQuandle, path) -> None:
    Path(path).write_text(format_quandle(X))
