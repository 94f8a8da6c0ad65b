import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quandlecoh import catalog as cat
from quandlecoh.coeff import GroupRingElem
from quandlecoh.diagram import BraidTangle, parse_braid, propagate, state_sum_2, tangle_state_sum
from quandlecoh.quandle import alexander, trivial
from quandlecoh.reproduce import THREE_TANGLE_K1, THREE_TANGLE_K2, random_antiparallel_link
from quandlecoh.skein import (
    NotAlexander,
    antiparallel_colors,
    antiparallel_colors_by_propagation,
    antiparallel_tangle,
    antiparallel_weight,
    antiparallel_weight_by_propagation,
    boundary_profile_equal,
    burau_matrix,
    identity_burau_words,
    solve_skein,
    solve_skein_shadow,
)

ALEX = [cat.r3, cat.r4, cat.s4, cat.z8_t3, cat.z8_t5]


def G(text, p):
    return GroupRingElem.parse(text, p)


def op(text):
    return parse_braid(text, closed=False)


open_braids = st.integers(1, 3).flatmap(
    lambda w: st.lists(
        st.tuples(st.integers(1, max(w - 1, 1)), st.sampled_from([1, -1])), max_size=6 if w > 1 else 0
    ).map(lambda word: BraidTangle(w, tuple(word), closed=False))
)


# --- Burau ----------------------------------------------------------------------


def test_identity_braid_gives_identity(s4):
    assert burau_matrix(op("w3:"), s4).is_identity()


@pytest.mark.parametrize("make", ALEX)
def test_single_letter_block(make):
    X = make()
    R = X.ring
    M = burau_matrix(op("w2: 1"), X)
    assert M.entries == ((R.zero, R.one), (R.T, R.sub(R.one, R.T)))


def test_s4_trefoil_has_identity_burau(s4):
    assert burau_matrix(op("w2: 1 1 1"), s4).is_identity()
    assert burau_matrix(op(THREE_TANGLE_K1), s4).is_identity()
    assert burau_matrix(op(THREE_TANGLE_K2), s4).is_identity()


def test_r4_twists_have_equal_burau():
    X = alexander(2, "T^2+1")
    assert burau_matrix(op("w2: 1 1 1 1"), X) == burau_matrix(op("w2: -1 -1 -1 -1"), X)
    assert burau_matrix(op("w2: 1 1 1 1"), cat.r4()) == burau_matrix(op("w2: -1 -1 -1 -1"), cat.r4())


def test_non_alexander_rejected():
    from quandlecoh.quandle import FiniteQuandle

    X = FiniteQuandle(trivial(3).table)
    with pytest.raises(NotAlexander):
        burau_matrix(op("w2: 1"), X)


@pytest.mark.parametrize("make", ALEX)
@settings(max_examples=20, deadline=None)
@given(b=open_braids, c=open_braids)
def test_burau_agrees_with_propagation(make, b, c):
    X = make()
    M = burau_matrix(b, X)
    for top in itertools.product(range(X.n), repeat=b.width):
        assert M.apply(top) == propagate(b, X, top)[0]
    if c.width == b.width:
        assert burau_matrix(b * c, X) == burau_matrix(c, X) @ M
    assert (burau_matrix(b.inverse(), X) @ M).is_identity()


@settings(max_examples=50, deadline=None)
@given(a=open_braids, b=open_braids)
def test_equal_burau_implies_equal_profile(a, b):
    X = cat.s4()
    if a.width == b.width and burau_matrix(a, X) == burau_matrix(b, X):
        assert boundary_profile_equal([a, b], X)


def test_identity_burau_search_finds_trefoil(s4):
    found = {tuple(t.word) for t in identity_burau_words(s4, 2, 3)}
    assert ((1, 1),) * 3 in found and ((1, -1),) * 3 in found


# --- boundary profiles -----------------------------------------------------------


def test_profiles(r3, r4):
    assert boundary_profile_equal([op("w2: 1 1 1 1"), op("w2:"), op("w2: -1 -1 -1 -1")], r4)
    assert boundary_profile_equal([op("w2: 1 1 1"), op("w2:"), op("w2: -1 -1 -1")], r3)
    res = boundary_profile_equal([op("w2: 1"), op("w2:")], r3)
    assert not res and res.witness == (0, 1)


def test_profile_width_mismatch(r3):
    with pytest.raises(ValueError):
        boundary_profile_equal([op("w2: 1"), op("w3: 1")], r3)


# --- skein solving ---------------------------------------------------------------


def _check_solutions(sy):
    for b in sy.basis:
        assert sy.annihilates(b)
    # substituting back: sum_i f_i t^(e_i) is the zero group-ring element
    for b in sy.basis:
        for tup in sy.value_tuples:
            total = GroupRingElem.zero(sy.p)
            for f, e in zip(b, tup):
                total = total + f * GroupRingElem.monomial(e, sy.p)
            assert total.is_zero()


def test_r4_relation(r4):
    sy = solve_skein([op("w2: 1 1 1 1"), op("w2:"), op("w2: -1 -1 -1 -1")], r4, cat.r4_cocycle(r4))
    _check_solutions(sy)
    assert sy.contains([G("1 - t^-1", 2), G("t^-1 - t", 2), G("t - 1", 2)])
    assert not sy.annihilates([G("1 - t^-1", 2), G("t^-1 + t", 2), G("t - 1", 2)])
    assert sorted(sy.class_sizes) == [8, 8]


def test_s4_trefoil_relation(s4):
    sy = solve_skein([op("w2: 1 1 1"), op("w2: -1 -1 -1")], s4, cat.s4_cocycle(s4))
    _check_solutions(sy)
    assert sy.contains([G("1", 2), G("-1", 2)])


def test_three_tangle_relation(s4):
    sy = solve_skein([op("w3:"), op(THREE_TANGLE_K1), op(THREE_TANGLE_K2)], s4, cat.s4_cocycle(s4))
    _check_solutions(sy)
    assert sy.equations() == ["f1 + f2 + f3 = 0", "f1 + f2 + t f3 = 0", "f1 + t f2 + t f3 = 0"]
    assert sy.class_sizes == [16, 24, 24]
    u = G("1 + t", 2)
    assert sy.contains([-2 * u, u, u])
    assert not sy.contains([G("-2", 2), G("1", 2), G("1", 2)])
    assert sy.contains([-u, u, G("0", 2)]) and sy.contains([-u, G("0", 2), u])
    assert len(sy.basis) == 2


def test_r3_shadow_relation(r3):
    fam = [op("w2: 1 1 1"), op("w2:"), op("w2: -1 -1 -1")]
    sy = solve_skein_shadow(fam, r3, cat.r3_xi(r3))
    _check_solutions(sy)
    assert sy.contains([G("1 - t^-1", 3), G("t^-1 - t", 3), G("t - 1", 3)])
    assert (0, 0, 0) in sy.value_tuples
    mirror = solve_skein_shadow(fam, r3, -1 * cat.r3_xi(r3))
    assert mirror.contains([G("1 - t", 3), G("t - t^-1", 3), G("t^-1 - 1", 3)])


def test_skein_rejects_unequal_profiles(r3):
    with pytest.raises(ValueError):
        solve_skein([op("w2: 1"), op("w2:")], r3, cat.r3_xi(r3))
    with pytest.raises(ValueError):
        solve_skein([], r3, cat.r3_xi(r3))


def test_transcript_mentions_everything(r4):
    sy = solve_skein([op("w2: 1 1 1 1"), op("w2:"), op("w2: -1 -1 -1 -1")], r4, cat.r4_cocycle(r4))
    text = "\n".join(sy.transcript())
    for piece in ("boundary profile: equal", "value tuples", "integer system: 4 x 6", "solution basis"):
        assert piece in text


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=4))
def test_single_tangle_system_is_trivial_or_torsion_free(signs):
    # one tangle: f * t^e = 0 forces f = 0
    X = cat.s4()
    sy = solve_skein([BraidTangle(2, tuple((1, s) for s in signs), closed=False)], X, cat.s4_cocycle(X))
    assert sy.basis == []


# --- antiparallel -------------------------------------------------------------------


@pytest.mark.parametrize("make", ALEX)
def test_antiparallel_closed_form_matches_propagation(make):
    X = make()
    for n in range(-4, 5):
        for x in range(X.n):
            for y in range(X.n):
                assert antiparallel_colors(X, x, y, n) == antiparallel_colors_by_propagation(X, x, y, n)


@pytest.mark.parametrize("make", ALEX)
def test_antiparallel_textbook_form(make):
    # x_n = (nT - (n-1)) x + n(1-T) y and y_n = n(T-1) x + ((n+1) - nT) y
    X = make()
    R = X.ring
    for n in range(-3, 4):
        a = R.sub(R.mul(R.scalar(n), R.T), R.scalar(n - 1))
        b = R.mul(R.scalar(n), R.sub(R.one, R.T))
        c = R.mul(R.scalar(n), R.sub(R.T, R.one))
        d = R.sub(R.scalar(n + 1), R.mul(R.scalar(n), R.T))
        for x in range(X.n):
            for y in range(X.n):
                xn = R.add(R.mul(a, x), R.mul(b, y))
                yn = R.add(R.mul(c, x), R.mul(d, y))
                assert antiparallel_colors(X, x, y, n) == (xn, yn)


@pytest.mark.parametrize("make", [cat.s4, cat.r4])
def test_coefficients_mod_n_make_p_n_trivial(make):
    X = make()
    k = X.ring.n
    for x in range(X.n):
        for y in range(X.n):
            assert antiparallel_colors(X, x, y, k) == (x, y)


def test_antiparallel_zero():
    X = cat.s4()
    assert antiparallel_colors(X, 1, 2, 0) == (1, 2)
    assert antiparallel_weight(X, cat.s4_cocycle(X), 1, 2, 0) == GroupRingElem.one(2)


@pytest.mark.parametrize("make, cmake", [(cat.r4, cat.r4_cocycle), (cat.s4, cat.s4_cocycle), (cat.z8_t5, cat.theta_z8_t5)])
def test_antiparallel_weight_matches_crossing_log(make, cmake):
    X, phi = make(), cmake()
    for n in range(-4, 5):
        for x in range(X.n):
            for y in range(X.n):
                assert antiparallel_weight(X, phi, x, y, n) == antiparallel_weight_by_propagation(X, phi, x, y, n)


def test_antiparallel_crossings_are_positive():
    t = antiparallel_tangle(2)
    _, log = propagate(t, cat.s4(), (0, 1))
    assert [c.sign for c in log] == [1, 1, 1, 1]
    _, log = propagate(antiparallel_tangle(-1), cat.s4(), (0, 1))
    assert [c.sign for c in log] == [-1, -1]


def test_p2_is_trivial_for_s4(s4):
    phi = cat.s4_cocycle(s4)
    for x in range(4):
        for y in range(4):
            assert antiparallel_weight(s4, phi, x, y, 2) == GroupRingElem.one(2)


@pytest.mark.parametrize("seed", range(5))
def test_p2_substitution(seed):
    X, phi = cat.s4(), cat.s4_cocycle()
    rng = np.random.default_rng(seed)
    for _ in range(4):
        b, level, i = random_antiparallel_link(rng)
        for g in (-1, 1):
            twisted = BraidTangle(b.width, b.word[:level] + ((i, g),) * 4 + b.word[level:], True, b.orientation)
            assert state_sum_2(twisted, X, phi) == state_sum_2(b, X, phi)
