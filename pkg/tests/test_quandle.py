import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quandlecoh.quandle import (
    FiniteQuandle,
    QuandleError,
    QuandleHom,
    alexander,
    build_quandle,
    check_axioms,
    dihedral,
    format_quandle,
    inner_automorphism,
    is_homomorphism,
    orbit_decomposition,
    parse_quandle_text,
    quandle_isomorphic,
    trivial,
)

SPECS = ["trivial:3", "dihedral:3", "dihedral:4", "dihedral:5", "alexander:2:T^2+T+1", "alexander:8:T-5", "alexander:8:T-3", "alexander:3:T^2+1"]


def brute_axioms(T):
    n = len(T)
    ok1 = all(T[a][a] == a for a in range(n))
    ok2 = all(sorted(T[a][b] for a in range(n)) == list(range(n)) for b in range(n))
    ok3 = all(T[T[a][b]][c] == T[T[a][c]][T[b][c]] for a in range(n) for b in range(n) for c in range(n))
    return ok1 and ok2 and ok3


@pytest.mark.parametrize("spec", SPECS)
def test_constructed_quandles_satisfy_axioms(spec):
    X = build_quandle(spec)
    assert brute_axioms(X.table.tolist())
    for a in range(X.n):
        for b in range(X.n):
            assert X.op_inv(X.op(a, b), b) == a


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_dihedral_formula(n):
    X = dihedral(n)
    assert all(X.op(i, j) == (2 * j - i) % n for i in range(n) for j in range(n))


def test_alexander_z8_t5_example():
    X = alexander(8, "T-5")
    assert X.op(0, 1) == 4  # 5*0 + (1-5)*1 = -4 = 4 mod 8
    assert all(X.op(a, b) == (5 * a - 4 * b) % 8 for a in range(8) for b in range(8))


def test_s4_encoding():
    X = alexander(2, "T^2+T+1")
    R = X.ring
    assert X.n == 4 and R.T == 2 and R.format(3) == "1 + T"
    # a*b = Ta + (1+T)b over Z_2, with T^2 = T + 1
    assert X.op(0, 1) == R.from_poly([1, 1])
    assert R.mul(R.T, R.T) == R.from_poly([1, 1])


@pytest.mark.parametrize("table, axiom", [([[1, 0], [0, 1]], "I"), ([[0, 0], [1, 0]], "II")])
def test_axiom_violations_reported(table, axiom):
    bad = check_axioms(np.array(table))
    assert any(v.axiom == axiom for v in bad)
    with pytest.raises(QuandleError):
        FiniteQuandle(table)


def test_axiom_three_violation():
    # idempotent with permutation columns, but not self-distributive
    T = [[0, 2, 1], [1, 1, 0], [2, 0, 2]]
    assert not brute_axioms(T)
    bad = check_axioms(np.array(T))
    assert {v.axiom for v in bad} == {"III"}
    assert bad[0].witness == (0, 1, 2)


@pytest.mark.parametrize("bad", ["alexander:8:T-2", "alexander:4", "dihedral:x", "nonsense"])
def test_bad_descriptors(bad):
    with pytest.raises(QuandleError):
        build_quandle(bad)


@pytest.mark.parametrize("spec", SPECS)
def test_file_roundtrip(spec, tmp_path):
    X = build_quandle(spec)
    Y = parse_quandle_text(format_quandle(X))
    assert X == Y
    p = tmp_path / "q.txt"
    p.write_text(format_quandle(X))
    assert build_quandle(str(p)) == X


@pytest.mark.parametrize("spec, k", [("alexander:8:T-3", 2), ("alexander:8:T-5", 4), ("dihedral:3", 1), ("dihedral:4", 2), ("trivial:5", 5)])
def test_orbits_brute_force(spec, k):
    X = build_quandle(spec)
    orb = orbit_decomposition(X)
    # brute force: closure of {a} under right multiplication by anything
    seen = set()
    classes = []
    for a in range(X.n):
        if a in seen:
            continue
        cls, frontier = {a}, [a]
        while frontier:
            x = frontier.pop()
            for b in range(X.n):
                for y in (X.op(x, b), X.op_inv(x, b)):
                    if y not in cls:
                        cls.add(y)
                        frontier.append(y)
        seen |= cls
        classes.append(tuple(sorted(cls)))
    assert sorted(orb.orbits) == sorted(classes)
    assert len(orb.orbits) == k
    assert orb.projection.is_surjective


def test_orbit_quandle_of_alexander_is_trivial():
    for spec in ("alexander:8:T-3", "alexander:8:T-5"):
        orb = orbit_decomposition(build_quandle(spec))
        assert orb.orbit_quandle.is_trivial


def test_isomorphism_search():
    assert quandle_isomorphic(dihedral(4), alexander(2, "T^2+1")) is not None
    assert quandle_isomorphic(dihedral(3), trivial(3)) is None
    f = quandle_isomorphic(dihedral(5), alexander(5, "T+1"))
    assert f is not None and is_homomorphism(f, dihedral(5), alexander(5, "T+1"))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SPECS), st.permutations(range(4)))
def test_isomorphism_finds_relabelled_copy(spec, perm):
    X = build_quandle(spec)
    if X.n != 4:
        return
    perm = np.array(perm)
    inv = np.argsort(perm)
    # Y = relabel X along perm
    Y = FiniteQuandle(perm[X.table[inv][:, inv]])
    f = quandle_isomorphic(X, Y)
    assert f is not None and is_homomorphism(f, X, Y)


def test_homomorphism_validation():
    with pytest.raises(QuandleError):
        QuandleHom(dihedral(3), trivial(1 + 1), (0, 1, 0))
    h = QuandleHom(alexander(8, "T-3"), trivial(2), tuple(a % 2 for a in range(8)))
    assert h.is_surjective and not h.is_bijective


def test_inner_automorphism_is_a_permutation():
    X = dihedral(5)
    perm = inner_automorphism(X, [(1, 1), (3, -1), (2, 1)])
    assert sorted(perm.tolist()) == list(range(5))
