"""The reproduction suite: every checkable claim, grouped by acceptance criterion.

Each ``criterion_k`` returns a list of ``Claim`` records; nothing raises on
a mismatch.  The CLI ``verify`` command and the acceptance tests both read
these records.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import catalog as cat
from .coeff import GroupRingElem
from .complex import (
    Chain,
    Cochain,
    basis,
    boundary,
    boundary_matrix,
    cocycle_basis,
    cohomology_dim,
    cohomology_dim_uct,
    delta,
    in_span_with_coboundaries,
    is_coboundary,
    is_cocycle,
    pullback_cocycle_basis,
    shift_anticommute_witness,
    shift_chain,
    shift_cochain,
    verify_shift_anticommutes,
    verify_shift_cocycle_iff,
    verify_shift_preserves_degenerate,
)
from .diagram import (
    BraidTangle,
    closure_colorings,
    count_colorings,
    parse_braid,
    propagate,
    state_sum_2,
    state_sum_3_shadow,
    tangle_state_sum,
    all_tops,
)
from .quandle import FiniteQuandle, orbit_decomposition, quandle_isomorphic, trivial
from .skein import (
    antiparallel_colors,
    antiparallel_colors_by_propagation,
    antiparallel_weight,
    antiparallel_weight_by_propagation,
    boundary_profile_equal,
    burau_matrix,
    solve_skein,
    solve_skein_shadow,
)

__all__ = ["Claim", "CRITERIA", "run_criteria", "random_braid", "random_antiparallel_link", "THREE_TANGLE_K1", "THREE_TANGLE_K2"]

# found by search over identity-Burau 3-braids on S_4
THREE_TANGLE_K1 = "w3: 2 1 1 1 2 2"
THREE_TANGLE_K2 = "w3: 1 1 1"


@dataclass(frozen=True)
class Claim:
    criterion: int
    name: str
    expected: str
    got: str
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.criterion}. {self.name}: expected {self.expected}; got {self.got}"


class _Recorder:
    def __init__(self, criterion: int):
        self.criterion = criterion
        self.claims: list[Claim] = []
        self._t = time.perf_counter()

    def add(self, name: str, expected, got, passed: bool | None = None):
        now = time.perf_counter()
        if passed is None:
            passed = expected == got
        self.claims.append(Claim(self.criterion, name, str(expected), str(got), bool(passed), now - self._t))
        self._t = now


def _timing(dt: float, limit: float) -> str:
    # exact times only on failure, so passing runs print identical text
    return f"< {limit:g} s" if dt < limit else f"{dt:.2f} s"


def _G(text: str, p: int) -> GroupRingElem:
    return GroupRingElem.parse(text, p)


def _open(text: str) -> BraidTangle:
    return parse_braid(text, closed=False)


# ---------------------------------------------------------------------------
# random diagrams
# ---------------------------------------------------------------------------


def random_braid(rng: np.random.Generator, width: int, length: int, closed: bool = True) -> BraidTangle:
    idx = rng.integers(1, width, size=length) if width > 1 else np.zeros(0, dtype=int)
    sg = rng.choice([-1, 1], size=len(idx))
    return BraidTangle(width, tuple(zip(idx.tolist(), sg.tolist())), closed)


def _orient_levels(b: BraidTangle) -> list[tuple[int, ...]]:
    o = list(b.orient)
    out = [tuple(o)]
    for i, _ in b.word:
        o[i - 1], o[i] = o[i], o[i - 1]
        out.append(tuple(o))
    return out


def random_antiparallel_link(rng: np.random.Generator, max_tries: int = 1000):
    """A closed braid with some components reversed and a marked antiparallel spot.

    Returns (braid, level, generator index): letters may be inserted after
    ``level`` letters at generator ``index``.
    """
    for _ in range(max_tries):
        w = int(rng.integers(2, 5))
        b = random_braid(rng, w, int(rng.integers(2, 9)))
        comps = b.components()
        if len(comps) < 2:
            continue
        which = [k for k in range(len(comps)) if rng.random() < 0.5]
        if not which or len(which) == len(comps):
            which = [0]
        b = b.reverse_components(which)
        spots = [
            (k, i + 1)
            for k, o in enumerate(_orient_levels(b))
            for i in range(w - 1)
            if o[i] != o[i + 1]
        ]
        if spots:
            k, i = spots[int(rng.integers(len(spots)))]
            return b, k, i
    raise RuntimeError("no antiparallel spot found")


def _insert(b: BraidTangle, level: int, letters) -> BraidTangle:
    return BraidTangle(b.width, b.word[:level] + tuple(letters) + b.word[level:], b.closed, b.orientation)


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1() -> list[Claim]:
    r = _Recorder(1)
    X = cat.z8_t5()
    t0 = time.perf_counter()
    got = state_sum_2(parse_braid("w2: 1 1 1 1"), X, cat.theta_z8_t5())
    dt = time.perf_counter() - t0
    r.add("Phi_theta(T(2,4)) over Z_8[T]/(T-5), p=2", "48 + 16t", str(got))
    r.add("computed in under 1 s", "< 1 s", _timing(dt, 1.0), dt < 1.0)
    return r.claims


def criterion_2() -> list[Claim]:
    r = _Recorder(2)
    X, phi = cat.s4(), cat.s4_cocycle()
    r.add("trefoil closure(s1^3) over S_4", "4 + 12t", str(state_sum_2(parse_braid("w2: 1 1 1"), X, phi)))
    r.add("mirror closure(s1^-3) over S_4", "4 + 12t", str(state_sum_2(parse_braid("w2: -1 -1 -1"), X, phi)))
    return r.claims


def criterion_3() -> list[Claim]:
    r = _Recorder(3)
    t0 = time.perf_counter()
    X = cat.z8_t5()
    theta = cat.theta_z8_t5(X)
    proj = orbit_decomposition(X).projection
    T24 = parse_braid("w2: 1 1 1 1")
    pulls2 = pullback_cocycle_basis(proj, 2, 2)
    sums = {str(state_sum_2(T24, X, f)) for f in pulls2}
    # each pullback gives exponent 0 on every coloring, so by linearity every
    # cocycle in their span does too
    r.add(f"Phi(T(2,4)) for all {len(pulls2)} pulled-back basis 2-cocycles", "['64']", str(sorted(sums)))
    r.add("theta in span(pullbacks) + B^2_Q(X; Z_2)", False, in_span_with_coboundaries(theta, pulls2))
    pulls3 = pullback_cocycle_basis(proj, 3, 2)
    rho_theta = shift_cochain(theta)
    r.add("shift(theta) in span(pullback 3-cocycles) + B^3_Q(X; Z_2)", False, in_span_with_coboundaries(rho_theta, pulls3))
    T4 = proj.target
    r.add("dim H^2_Q(X;Z_2) > dim H^2_Q(T_4;Z_2)", "16 > 12", f"{cohomology_dim(X, 2, 2)} > {cohomology_dim(T4, 2, 2)}")
    r.add("dim H^3_Q(X;Z_2) > dim H^3_Q(T_4;Z_2)", "64 > 36", f"{cohomology_dim(X, 3, 2)} > {cohomology_dim(T4, 3, 2)}")
    dt = time.perf_counter() - t0
    r.add("criterion computed in under 30 s", "< 30 s", _timing(dt, 30.0), dt < 30)
    return r.claims


def criterion_4() -> list[Claim]:
    r = _Recorder(4)
    for X, k in ((cat.z8_t3(), 2), (cat.z8_t5(), 4)):
        orb = orbit_decomposition(X)
        iso = quandle_isomorphic(orb.orbit_quandle, trivial(k))
        r.add(f"Orb({X.label}) isomorphic to trivial:{k}", "isomorphism", "none" if iso is None else f"map {iso}", iso is not None)
    return r.claims


def criterion_5() -> list[Claim]:
    r = _Recorder(5)
    t0 = time.perf_counter()
    R3 = cat.r3()
    d4 = cohomology_dim(R3, 4, 3)
    r.add("dim H^4_Q(R_3; Z_3) >= 1 (rank)", ">= 1", d4, d4 >= 1)
    r.add("dim H^4_Q(R_3; Z_3) via universal coefficients", d4, cohomology_dim_uct(R3, 4, 3))
    d3 = cohomology_dim(R3, 3, 3)
    r.add("dim H^3_Q(R_3; Z_3) >= 1", ">= 1", d3, d3 >= 1)
    phi = cat.r3_phi3(R3)
    r.add("phi (chi_202 once) is a 3-cocycle, not a coboundary", "True, False", f"{is_cocycle(phi)}, {is_coboundary(phi)}")
    r.add("printed phi (chi_202 twice) is a 3-cocycle", False, is_cocycle(cat.r3_phi3_literal(R3)))
    dt = time.perf_counter() - t0
    r.add("criterion computed in under 60 s", "< 60 s", _timing(dt, 60.0), dt < 60)
    return r.claims


SHIFT_CASES = (("r3", 4), ("r4", 4), ("s4", 3), ("z8_t3", 3), ("z8_t5", 3))


def criterion_6() -> list[Claim]:
    r = _Recorder(6)
    for name, top in SHIFT_CASES:
        X = getattr(cat, name)()
        for n in range(2, top + 1):
            w = shift_anticommute_witness(X, n)
            r.add(f"rho d = -d rho on C^Q_{n}({X.label})", "no counterexample", "none" if w is None else f"fails at {w}", w is None)
    for X, n, p in ((cat.r3(), 2, 3), (cat.r3(), 3, 3), (cat.r4(), 2, 2)):
        r.add(f"f cocycle <=> rho f cocycle, {X.label}, n={n}, p={p}", True, verify_shift_cocycle_iff(X, n, p))
    R4 = cat.r4()
    c = Chain.generator(R4, (2, 1, 3))
    d = boundary(c)
    r.add("d(2,1,3) in R_4", "(0,1) - (0,3) - (2,1) + (2,3)", str(d))
    r.add("rho(2,1,3)", "(1,3)", str(shift_chain(c)))
    r.add("d rho(2,1,3)", "0", str(boundary(shift_chain(c))))
    return r.claims


def criterion_7() -> list[Claim]:
    r = _Recorder(7)
    # (a) R_4
    R4 = cat.r4()
    fam = [_open("w2: 1 1 1 1"), _open("w2:"), _open("w2: -1 -1 -1 -1")]
    r.add("(a) boundary profiles of s1^4, 1, s1^-4 over R_4 agree", True, bool(boundary_profile_equal(fam, R4)))
    for p in (2, 3):
        sy = solve_skein(fam, R4, cat.r4_cocycle(R4) if p == 2 else _r4_cocycle_mod(R4, p))
        f = [_G("1 - t^-1", p), _G("t^-1 - t", p), _G("t - 1", p)]
        r.add(f"(a) (1-t^-1, t^-1-t, t-1) in R_4 lattice, p={p}", True, sy.contains(f))
        bad = [_G("1 - t^-1", p), _G("t^-1 + t", p), _G("t - 1", p)]
        r.add(f"(a) printed (1-t^-1, t^-1+t, t-1) annihilates, p={p}", False, sy.annihilates(bad))
    # (b) S_4 trefoil tangles
    S4, phi = cat.s4(), cat.s4_cocycle()
    sy = solve_skein([_open("w2: 1 1 1"), _open("w2: -1 -1 -1")], S4, phi)
    r.add("(b) (1, -1) in lattice of {s1^3, s1^-3} over S_4", True, sy.contains([_G("1", 2), _G("-1", 2)]))
    # (c) three 3-tangles with identity Burau matrix
    K0, K1, K2 = _open("w3:"), _open(THREE_TANGLE_K1), _open(THREE_TANGLE_K2)
    r.add("(c) K1, K2 have identity Burau matrix over S_4", "True, True", f"{burau_matrix(K1, S4).is_identity()}, {burau_matrix(K2, S4).is_identity()}")
    sy = solve_skein([K0, K1, K2], S4, phi)
    r.add("(c) case equations (K0, K1, K2)", "f1 + f2 + f3 = 0 | f1 + f2 + t f3 = 0 | f1 + t f2 + t f3 = 0", " | ".join(sy.equations()))
    u = _G("1 + t", 2)
    r.add("(c) every solution has (t-1) f_1 = (t-1) f_2 = 0 and f_0 = -(f_1 + f_2)", True, all(
        (_G("t - 1", 2) * b[1]).is_zero() and (_G("t - 1", 2) * b[2]).is_zero() and (b[0] + b[1] + b[2]).is_zero()
        for b in sy.basis
    ))
    r.add("(c) (t+1)(Phi(K1) + Phi(K2) - 2 Phi(K0)) = 0 in lattice", True, sy.contains([-2 * u, u, u]))
    r.add("(c) Phi(K1) + Phi(K2) - 2 Phi(K0) = 0 in lattice", False, sy.contains([_G("-2", 2), _G("1", 2), _G("1", 2)]))
    # (d) R_3 shadow
    R3, xi = cat.r3(), cat.r3_xi()
    fam3 = [_open("w2: 1 1 1"), _open("w2:"), _open("w2: -1 -1 -1")]
    sy = solve_skein_shadow(fam3, R3, xi)
    r.add("(d) (1-t^-1, -(t-t^-1), t-1) in R_3 shadow lattice", True, sy.contains([_G("1 - t^-1", 3), _G("t^-1 - t", 3), _G("t - 1", 3)]))
    r.add("(d) equal-colour tops give f+ + f0 + f- = 0", True, any(all(e == 0 for e in tup) for tup in sy.value_tuples))
    sy = solve_skein_shadow(fam3, R3, -1 * xi)
    r.add("(d) mirror (1-t, -(t^-1-t), t^-1-1) in lattice for xi^-1", True, sy.contains([_G("1 - t", 3), _G("t - t^-1", 3), _G("t^-1 - 1", 3)]))
    return r.claims


def _r4_cocycle_mod(X, p):
    from .complex import combine

    return combine(X, [((0, 1), 1), ((0, 3), 1)], p)


def criterion_8(seed: int = 0) -> list[Claim]:
    r = _Recorder(8)
    for X in (cat.r4(), cat.s4(), cat.z8_t3(), cat.z8_t5()):
        bad = [
            (x, y, n)
            for n in range(-4, 5)
            for x in range(X.n)
            for y in range(X.n)
            if antiparallel_colors(X, x, y, n) != antiparallel_colors_by_propagation(X, x, y, n)
        ]
        r.add(f"closed-form (x_n, y_n) = propagation on {X.label}, -4..4", "0 mismatches", f"{len(bad)} mismatches", not bad)
    for X, phi in ((cat.r4(), cat.r4_cocycle()), (cat.s4(), cat.s4_cocycle()), (cat.z8_t5(), cat.theta_z8_t5())):
        bad = [
            (x, y, n)
            for n in range(-4, 5)
            for x in range(X.n)
            for y in range(X.n)
            if antiparallel_weight(X, phi, x, y, n) != antiparallel_weight_by_propagation(X, phi, x, y, n)
        ]
        r.add(f"antiparallel weight product = crossing log on {X.label}", "0 mismatches", f"{len(bad)} mismatches", not bad)
    S4, phi = cat.s4(), cat.s4_cocycle()
    ws = {(antiparallel_colors(S4, x, y, 2), str(antiparallel_weight(S4, phi, x, y, 2))) == ((x, y), "1") for x in range(4) for y in range(4)}
    r.add("P_2 over S_4 fixes colours and has weight 1 for all (x,y)", {True}, ws)
    rng = np.random.default_rng(seed)
    changed = 0
    for _ in range(20):
        b, level, i = random_antiparallel_link(rng)
        with_p2 = _insert(b, level, [(i, -1)] * 4)
        if state_sum_2(with_p2, S4, phi) != state_sum_2(b, S4, phi):
            changed += 1
    r.add("P_2 -> P_0 leaves 20 random link invariants unchanged", "0 changed", f"{changed} changed", changed == 0)
    return r.claims


PROPERTY_PAIRS = (("r4", "r4_cocycle"), ("s4", "s4_cocycle"), ("z8_t5", "theta_z8_t5"))


def criterion_9(seed: int = 0) -> list[Claim]:
    r = _Recorder(9)
    rng = np.random.default_rng(seed)
    ok = True
    for name in ("r3", "r4", "s4"):
        X = getattr(cat, name)()
        for v in ("R", "D", "Q"):
            for n in range(2, 4):
                A, B = boundary_matrix(X, n, v), boundary_matrix(X, n + 1, v)
                if A.size and B.size and (A @ B).any():
                    ok = False
    r.add("d d = 0 (R, D, Q; R_3, R_4, S_4; n = 2, 3)", True, ok)
    ok = True
    for name in ("r3", "r4", "s4", "z8_t5"):
        X = getattr(cat, name)()
        for n in (1, 2):
            vals = rng.integers(0, 5, size=(X.n,) * n)
            if n >= 2:
                vals[np.eye(X.n, dtype=bool)] = 0
            f = Cochain(X, n, 5, vals)
            ok &= delta(delta(f)).is_zero()
    r.add("delta delta = 0 on random cochains", True, ok)
    bad = 0
    for name, _ in PROPERTY_PAIRS:
        X = getattr(cat, name)()
        for _ in range(20):
            g = Cochain(X, 1, 2, rng.integers(0, 2, size=X.n))
            b = random_braid(rng, int(rng.integers(1, 4)), int(rng.integers(0, 7)))
            s = state_sum_2(b, X, delta(g))
            if s != GroupRingElem.monomial(0, 2, count_colorings(b, X)):
                bad += 1
    r.add("coboundary state-sums are (colorings) * 1 on 60 random braids", 0, bad)
    bad = 0
    for name, cname in PROPERTY_PAIRS:
        X, phi = getattr(cat, name)(), getattr(cat, cname)()
        for _ in range(50):
            w = int(rng.integers(1, 4)) if X.n > 4 else int(rng.integers(1, 5))
            b = random_braid(rng, w, int(rng.integers(0, 8)))
            base = state_sum_2(b, X, phi)
            if base.augmentation() != count_colorings(b, X):
                bad += 1
            k = int(rng.integers(0, len(b.word) + 1))
            conj = BraidTangle(w, b.word[k:] + b.word[:k])
            pos = int(rng.integers(0, len(b.word) + 1))
            if w > 1:
                i = int(rng.integers(1, w))
                ins = BraidTangle(w, b.word[:pos] + ((i, 1), (i, -1)) + b.word[pos:])
            else:
                ins = b
            stab = BraidTangle(w + 1, b.word + ((w, int(rng.choice([-1, 1]))),))
            for other in (conj, ins, stab):
                if state_sum_2(other, X, phi) != base:
                    bad += 1
    r.add("mass, conjugation, s s^-1 insertion and stabilization invariance (150 braids)", 0, bad)
    bad = 0
    for name in ("r3", "r4", "s4", "z8_t3", "z8_t5"):
        X = getattr(cat, name)()
        for _ in range(20):
            w = int(rng.integers(1, 4))
            b = random_braid(rng, w, int(rng.integers(0, 8)), closed=False)
            M = burau_matrix(b, X)
            for top in all_tops(X.n, w):
                if M.apply(top) != propagate(b, X, top)[0]:
                    bad += 1
                    break
            c = random_braid(rng, w, int(rng.integers(0, 5)), closed=False)
            if burau_matrix(b * c, X) != burau_matrix(c, X) @ M:
                bad += 1
            if not (burau_matrix(b.inverse(), X) @ M).is_identity():
                bad += 1
    r.add("Burau action = propagation, multiplicative, inverse (100 braids)", 0, bad)
    bad = 0
    S4 = cat.s4()
    for _ in range(100):
        w = 3
        a = random_braid(rng, w, int(rng.integers(0, 7)), closed=False)
        b = random_braid(rng, w, int(rng.integers(0, 7)), closed=False)
        if burau_matrix(a, S4) == burau_matrix(b, S4) and not boundary_profile_equal([a, b], S4):
            bad += 1
    r.add("equal Burau matrices imply equal boundary profiles (100 pairs)", 0, bad)
    S4, phi = cat.s4(), cat.s4_cocycle()
    words = ["w3: 1 -2 1 -2", "w3: -1 2 -1 2", "w3: 2 -1 2 -1", "w3: -2 1 -2 1"]
    tables = {
        tuple(tangle_state_sum(_open(wd), S4, phi, top)[1].exponent() for top in all_tops(4, 3))
        for wd in words
    }
    r.add("figure-eight braid words give equal per-top tangle sums (all 64 tops)", 1, len(tables))
    closed_terms = []
    for wd in words:
        cs = closure_colorings(parse_braid(wd), S4)
        closed_terms.append({c.top: sum(x.sign * phi(x.source, x.over) for x in c.log) % 2 for c in cs})
    r.add(
        "figure-eight braid words give equal closed-braid terms per top coloring",
        True,
        all(t == closed_terms[0] for t in closed_terms),
    )
    return r.claims


CRITERIA: dict[int, Callable[..., list[Claim]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_criteria(which=None, seed: int = 0) -> list[Claim]:
    out = []
    for k in which or sorted(CRITERIA):
        fn = CRITERIA[k]
        out.extend(fn(seed=seed) if k in (8, 9) else fn())
    return out
