import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quandlecoh import catalog as cat
from quandlecoh.complex import (
    Chain,
    Cochain,
    HomologyGroup,
    InfeasibleSize,
    basis,
    boundary,
    boundary_matrix,
    char_cochain,
    coboundary_matrix,
    cocycle_basis,
    cohomology_dim,
    cohomology_dim_uct,
    combine,
    delta,
    format_cochain,
    homology,
    in_span_with_coboundaries,
    is_coboundary,
    is_cocycle,
    parse_cochain,
    pullback_cochain,
    shift_anticommute_witness,
    shift_chain,
    shift_cochain,
    verify_shift_anticommutes,
    verify_shift_anticommutes_cochains,
    verify_shift_preserves_degenerate,
)
from quandlecoh.quandle import QuandleHom, build_quandle, dihedral, orbit_decomposition, trivial

SMALL = ["trivial:2", "dihedral:3", "dihedral:4", "alexander:2:T^2+T+1"]


def naive_boundary(X, x):
    """The defining sum, written out independently of the library."""
    out = {}
    n = len(x)
    for i in range(2, n + 1):  # 1-based index of the deleted entry
        s = (-1) ** i
        xi = x[i - 1]
        face = x[: i - 1] + x[i:]
        acted = tuple(X.op(a, xi) for a in x[: i - 1]) + x[i:]
        out[face] = out.get(face, 0) + s
        out[acted] = out.get(acted, 0) - s
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("n", [2, 3])
def test_boundary_matches_formula(spec, n):
    X = build_quandle(spec)
    for x in basis(X, n, "R"):
        got = boundary(Chain.generator(X, x, "R"))
        assert got.terms == dict(sorted(naive_boundary(X, x).items()))


def test_remark_chain_2_1_3(r4):
    c = Chain.generator(r4, (2, 1, 3))
    assert str(boundary(c)) == "(0,1) - (0,3) - (2,1) + (2,3)"
    assert str(shift_chain(c)) == "(1,3)"
    assert boundary(shift_chain(c)).is_zero()


@pytest.mark.parametrize("spec", SMALL + ["alexander:8:T-5"])
@pytest.mark.parametrize("variant", ["R", "D", "Q"])
def test_dd_zero(spec, variant):
    X = build_quandle(spec)
    for n in (2, 3):
        A, B = boundary_matrix(X, n, variant), boundary_matrix(X, n + 1, variant)
        if A.size and B.size:
            assert not (A @ B).any()


@pytest.mark.parametrize("variant, count", [("R", 27), ("D", 15), ("Q", 12)])
def test_basis_sizes(r3, variant, count):
    assert len(basis(r3, 3, variant)) == count


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_quandle_homology_is_free(k, n):
    # the boundary vanishes for trivial quandles
    X = trivial(k)
    assert homology(X, n, "R") == HomologyGroup(k**n)
    assert homology(X, n, "Q") == HomologyGroup(k * (k - 1) ** (n - 1))


@pytest.mark.parametrize(
    "spec, n, expect",
    [("dihedral:3", 1, "Z"), ("dihedral:3", 2, "0"), ("dihedral:3", 3, "Z/3"), ("dihedral:4", 1, "Z^2"), ("alexander:8:T-3", 1, "Z^2")],
)
def test_quandle_homology_values(spec, n, expect):
    assert str(homology(build_quandle(spec), n, "Q")) == expect


@pytest.mark.parametrize("spec", SMALL + ["dihedral:5"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_cohomology_rank_vs_universal_coefficients(spec, n):
    X = build_quandle(spec)
    for p in (2, 3):
        assert cohomology_dim(X, n, p) == cohomology_dim_uct(X, n, p)


def test_r3_cohomology_with_z3(r3):
    assert [cohomology_dim(r3, n, 3) for n in (2, 3, 4)] == [0, 1, 2]


def test_infeasible_guard(z8_t5):
    with pytest.raises(InfeasibleSize):
        boundary_matrix(z8_t5, 8, "R")


# --- cochains ------------------------------------------------------------------


def naive_delta(f, x):
    return sum(c * f(y) for y, c in naive_boundary(f.X, x).items()) % f.p


@pytest.mark.parametrize("spec, p", [("dihedral:3", 3), ("dihedral:4", 2), ("alexander:2:T^2+T+1", 2)])
def test_delta_matches_formula(spec, p):
    X = build_quandle(spec)
    rng = np.random.default_rng(0)
    for n in (1, 2):
        vals = rng.integers(0, p, size=(X.n,) * n)
        if n == 2:
            vals[np.eye(X.n, dtype=bool)] = 0
        f = Cochain(X, n, p, vals)
        d = delta(f)
        for x in itertools.product(range(X.n), repeat=n + 1):
            if len(set(zip(x, x[1:]))) and any(a == b for a, b in zip(x, x[1:])):
                continue
            assert d(x) == naive_delta(f, x)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_delta_delta_zero(spec, p, n, seed):
    X = build_quandle(spec)
    vals = np.random.default_rng(seed).integers(0, p, size=(X.n,) * n)
    if n == 2:
        vals[np.eye(X.n, dtype=bool)] = 0
    assert delta(delta(Cochain(X, n, p, vals))).is_zero()


def test_coboundary_matrix_is_transpose(r3):
    assert np.array_equal(coboundary_matrix(r3, 2, 3), boundary_matrix(r3, 3).T % 3)


@pytest.mark.parametrize(
    "make, cocycle",
    [
        (cat.theta_z8_t5, True),
        (cat.theta_z8_t5_literal, False),
        (cat.s4_cocycle, True),
        (cat.r4_cocycle, True),
        (cat.r3_xi, True),
        (cat.r3_phi3, True),
        (cat.r3_phi3_literal, False),
    ],
)
def test_catalog_cocycles(make, cocycle):
    assert is_cocycle(make()) is cocycle


@pytest.mark.parametrize("make", [cat.theta_z8_t5, cat.s4_cocycle, cat.r3_xi, cat.r3_phi3])
def test_catalog_cocycles_are_not_coboundaries(make):
    assert not is_coboundary(make())


def test_theta_transpose_relation(z8_t5):
    lit, tr = cat.theta_z8_t5_literal(z8_t5), cat.theta_z8_t5(z8_t5)
    assert np.array_equal(lit.values.T, tr.values)


def test_coboundary_is_detected(r3):
    g = Cochain(r3, 1, 3, [0, 1, 2])
    assert is_cocycle(delta(g)) and is_coboundary(delta(g))


def test_cocycle_basis_dimension(r3):
    B = cocycle_basis(r3, 3, 3)
    assert all(is_cocycle(f) for f in B)
    M = np.array([f.vector() for f in B])
    from quandlecoh.coeff import rank_mod_p

    assert rank_mod_p(M, 3) == len(B)


def test_quandle_cochain_must_vanish_on_degenerate(r3):
    with pytest.raises(ValueError):
        Cochain(r3, 2, 3, np.ones((3, 3), dtype=int))
    with pytest.raises(ValueError):
        char_cochain(r3, (1, 1), 3)


def test_pullback_along_orbit_map(z8_t5):
    proj = orbit_decomposition(z8_t5).projection
    T4 = proj.target
    for g in cocycle_basis(T4, 2, 2):
        f = pullback_cochain(proj, g)
        assert is_cocycle(f)
        for a in range(8):
            for b in range(8):
                assert f(a, b) == g(proj(a), proj(b))


def test_span_with_coboundaries(r3):
    g = Cochain(r3, 1, 3, [0, 1, 2])
    xi = cat.r3_xi(r3)
    assert in_span_with_coboundaries(delta(Cochain(r3, 2, 3, np.zeros((3, 3), dtype=int))), [])
    assert in_span_with_coboundaries(xi + xi, [xi])
    assert not in_span_with_coboundaries(xi, [])
    assert in_span_with_coboundaries(delta(g), [])


@pytest.mark.parametrize("make", [cat.theta_z8_t5, cat.r3_xi, cat.r3_phi3])
def test_cochain_file_roundtrip(make, tmp_path):
    f = make()
    assert parse_cochain(format_cochain(f)) == f


@pytest.mark.parametrize("bad", ["", "cochain n=2", "cochain X=dihedral:3 n=2 p=3\n0 1 2 : 1", "cochain X=dihedral:3 n=2 p=3\n0 1 1"])
def test_cochain_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_cochain(bad)


# --- shift: the parts that hold -------------------------------------------------


@pytest.mark.parametrize("spec", SMALL + ["alexander:8:T-3", "alexander:8:T-5"])
def test_shift_anticommutes_in_degree_two(spec):
    assert verify_shift_anticommutes(build_quandle(spec), 2)


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_unconditional_shift_anticommutes_on_rack_complex(spec, n):
    assert verify_shift_anticommutes(build_quandle(spec), n, "R", conditional=False)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_shift_anticommutes_for_trivial_quandles(k, n):
    assert verify_shift_anticommutes(trivial(k), n)
    assert verify_shift_anticommutes(trivial(k), n, "R")


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("n", [2, 3])
def test_shift_preserves_degenerate_chains(spec, n):
    assert verify_shift_preserves_degenerate(build_quandle(spec), n)


def test_shift_defect_hand_example(r3):
    # rho d (0,1,2) = (2) - (1) + (0) while -d rho (0,1,2) = -(1) + (0)
    c = Chain.generator(r3, (0, 1, 2))
    lhs = shift_chain(boundary(c))
    rhs = -boundary(shift_chain(c))
    assert lhs.terms == {(0,): 1, (1,): -1, (2,): 1}
    assert rhs.terms == {(0,): 1, (1,): -1}
    assert shift_anticommute_witness(r3, 3) is not None


def test_shift_cochain_definition(r3):
    xi = cat.r3_xi(r3)
    g = shift_cochain(xi)
    for x in itertools.product(range(3), repeat=4):
        assert g(x) == (0 if x[0] == x[1] else xi(x[1:]))


@pytest.mark.parametrize("spec", SMALL + ["trivial:3"])
@pytest.mark.parametrize("n", [1, 2])
def test_cochain_shift_is_dual_to_chain_shift(spec, n):
    # shift(delta f) = -delta(shift f) on C^n is the dual of the chain identity on C_{n+2}
    X = build_quandle(spec)
    p = 3 if X.n % 3 == 0 else 2
    assert verify_shift_anticommutes_cochains(X, n, p) == verify_shift_anticommutes(X, n + 2)


@pytest.mark.parametrize("k", [2, 3])
def test_cochain_shift_anticommutes_for_trivial_quandles(k):
    assert verify_shift_anticommutes_cochains(trivial(k), 1, 2)
    assert verify_shift_anticommutes_cochains(trivial(k), 2, 2)


@pytest.mark.parametrize("variant", ["R", "D", "Q"])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("n", range(0, 5))
def test_basis_size_counts_basis(variant, N, n):
    from quandlecoh.complex import basis_size

    X = trivial(N)
    assert basis_size(X, n, variant) == len(basis(X, n, variant))


def test_guard_fires_before_enumeration():
    from quandlecoh.complex import InfeasibleSize, boundary_matrix

    with pytest.raises(InfeasibleSize):
        boundary_matrix(dihedral(5), 40)
