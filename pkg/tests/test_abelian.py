import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from boundaryk.abelian import (
    TRIVIAL,
    Z,
    FgAbGroup,
    GroupMap,
    IntMatrix,
    OracleRefused,
    cokernel,
    direct_sum,
    enumerate_extensions,
    ext,
    hom,
    is_isomorphic,
    map_cokernel,
    map_kernel,
    snf,
    tensor,
    tor,
    torsion_generator_count,
    torsion_order,
)

G = FgAbGroup.parse


def cyc(n):
    return FgAbGroup.cyclic(n)


groups = st.builds(
    lambda r, fs: FgAbGroup.from_cyclic([0] * r + fs),
    st.integers(0, 3),
    st.lists(st.integers(2, 12), max_size=3),
)
small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


def check_snf(rows):
    m = IntMatrix.from_rows(rows)
    u, d, v = snf(m)
    assert u @ m @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    diag = d.diagonal()
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero  # zeros last
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert diag == oracles.invariant_factors_by_minors(rows)


# --- snf ---------------------------------------------------------------------


def test_snf_identity():
    m = IntMatrix.from_rows([[1, 0], [0, 1]])
    assert snf(m) == (m, m, m)


def test_snf_2x2_against_minors():
    m = [[2, 4], [6, 8]]
    # gcd of entries 2, |det| 8 -> diag(2, 4)
    assert oracles.invariant_factors_by_minors(m) == [2, 4]
    _, d, _ = snf(IntMatrix.from_rows(m))
    assert d.diagonal() == [2, 4]
    check_snf(m)


def test_snf_zero():
    _, d, _ = snf(IntMatrix.from_rows([[0]]))
    assert d.to_rows() == [[0]]


def test_snf_empty_shapes():
    for rows, cols in [(0, 3), (3, 0), (0, 0)]:
        m = IntMatrix(rows, cols, ())
        u, d, v = snf(m)
        assert (u.rows, d.rows, d.cols, v.cols) == (rows, rows, cols, cols)


def test_snf_big_entries_are_exact():
    big = 10**30
    rows = [[big, big + 1], [big * 3, 7]]
    m = IntMatrix.from_rows(rows)
    u, d, v = snf(m)
    assert u @ m @ v == d
    assert d.diagonal()[0] == 1
    assert d.diagonal()[1] == abs(m.det())


@settings(max_examples=300, deadline=None)
@given(small_matrices)
def test_snf_property(rows):
    check_snf(rows)


def test_intmatrix_shape_checked():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))


# --- groups ------------------------------------------------------------------


@pytest.mark.parametrize("rows, expected", [
    ([[1, 0, 0], [0, 2, 0], [0, 0, 0]], FgAbGroup(1, (2,))),
    ([[3]], cyc(3)),
    ([[2, 0], [0, 4], [0, 0]], FgAbGroup(1, (2, 4))),
])
def test_cokernel(rows, expected):
    assert cokernel(IntMatrix.from_rows(rows)) == expected


def test_cokernel_3x2_matches_minors():
    rows = [[2, 0], [0, 4], [0, 0]]
    assert oracles.invariant_factors_by_minors(rows) == [2, 4]


def test_direct_sum_examples():
    assert direct_sum(Z, cyc(2)) == FgAbGroup(1, (2,))
    assert direct_sum(cyc(2), cyc(2)) == FgAbGroup(0, (2, 2))
    assert direct_sum(cyc(2), cyc(2)) != cyc(4)
    six = direct_sum(cyc(2), cyc(3))
    assert six == cyc(6)
    assert oracles.census([2, 3]) == oracles.census([6])


@settings(max_examples=100, deadline=None)
@given(groups, groups, groups)
def test_direct_sum_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + TRIVIAL == a
    assert (a + b).rank == a.rank + b.rank
    assert torsion_order(a + b) == torsion_order(a) * torsion_order(b)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 12), max_size=3))
def test_canonical_form_matches_census(factors):
    g = FgAbGroup.from_cyclic(factors)
    assert oracles.census_of_group(g) == oracles.census(factors)


def test_read_offs():
    assert torsion_order(FgAbGroup(3)) == 1
    assert torsion_order(FgAbGroup(5, (2,))) == 2
    assert torsion_generator_count(FgAbGroup(0, (2, 4))) == 2
    assert is_isomorphic(G("Z/2 + Z/3"), G("Z/6"))


def test_invalid_canonical_form_rejected():
    with pytest.raises(ValueError):
        FgAbGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FgAbGroup(0, (1,))
    with pytest.raises(ValueError):
        FgAbGroup(-1)


@pytest.mark.parametrize("text, expected", [
    ("0", TRIVIAL),
    ("Z", Z),
    ("Z^5 + Z/2", FgAbGroup(5, (2,))),
    ("Z^4 + Z/2 + Z/4", FgAbGroup(4, (2, 4))),
    ("Z/1", TRIVIAL),
    ("Z + Z", FgAbGroup(2)),
])
def test_parse(text, expected):
    assert G(text) == expected


@pytest.mark.parametrize("text", ["", "Q", "Z/0", "Z^", "Z/2 +", "Z*2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        G(text)


@settings(max_examples=100, deadline=None)
@given(groups)
def test_str_round_trip(g):
    assert G(str(g)) == g


def test_str_grammar():
    assert str(TRIVIAL) == "0"
    assert str(FgAbGroup(5, (2,))) == "Z^5 + Z/2"
    assert str(Z) == "Z"


# --- hom / ext / tor -----------------------------------------------------------


def test_hom_ext_tor_examples():
    a = G("Z^2 + Z/4")
    assert hom(Z, a) == a
    assert hom(cyc(6), cyc(4)) == cyc(2)
    assert ext(cyc(6), cyc(4)) == cyc(2)
    assert ext(FgAbGroup(3), a) == TRIVIAL
    assert tor(Z, a) == TRIVIAL
    assert tor(cyc(4), cyc(6)) == cyc(2)
    assert tor(cyc(2), cyc(2)) == cyc(2)


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 7) for n in range(1, 7)])
def test_cyclic_functors_against_brute_force(m, n):
    assert oracles.census_of_group(hom(cyc(m), cyc(n))) == oracles.hom_census(m, n)
    assert oracles.census_of_group(ext(cyc(m), cyc(n))) == oracles.ext_census(m, n)
    assert torsion_order(tor(cyc(m), cyc(n))) == oracles.tor_order(m, n)


def test_functors_with_free_parts():
    assert hom(cyc(3), Z) == TRIVIAL
    assert ext(cyc(3), Z) == cyc(3)
    assert tensor(Z, G("Z/5")) == cyc(5)
    assert tensor(FgAbGroup(2), FgAbGroup(3)) == FgAbGroup(6)


@settings(max_examples=60, deadline=None)
@given(groups, groups, groups)
def test_functors_additive(a, a2, b):
    for f in (hom, ext, tor, tensor):
        assert f(a + a2, b) == f(a, b) + f(a2, b)
        assert f(b, a + a2) == f(b, a) + f(b, a2)


# --- maps ----------------------------------------------------------------------


def test_map_kernel_cokernel():
    times3 = GroupMap(Z, Z, ((3,),))
    assert map_kernel(times3) == TRIVIAL
    assert map_cokernel(times3) == cyc(3)
    zero = GroupMap.zero(Z, Z)
    assert map_kernel(zero) == Z and map_cokernel(zero) == Z
    proj = GroupMap(cyc(4), cyc(2), ((1,),))
    assert map_kernel(proj) == cyc(2) and map_cokernel(proj) == TRIVIAL
    incl = GroupMap(cyc(2), cyc(4), ((2,),))
    assert map_kernel(incl) == TRIVIAL and map_cokernel(incl) == cyc(2)
    to_zero = GroupMap.zero(G("Z^2 + Z/3"), TRIVIAL)
    assert map_kernel(to_zero) == G("Z^2 + Z/3")


def test_map_must_be_well_defined():
    with pytest.raises(ValueError):
        GroupMap(cyc(2), Z, ((1,),))
    with pytest.raises(ValueError):
        GroupMap(cyc(3), cyc(2), ((1,),))


def test_map_kernel_mixed():
    # Z + Z/6 -> Z/4, (x, y) -> 2x + 2y ; kernel brute force on a finite model below
    f = GroupMap(G("Z + Z/6"), cyc(4), ((2, 2),))
    # image is {0, 2} so the cokernel is Z/2
    assert map_cokernel(f) == cyc(2)
    # kernel has index 2 in Z + Z/6: contains 2Z, and (1, 1) since 2+2 = 0 mod 4
    # so kernel = {(x, y): x + y even} which is generated by (1,1), (0,2) -> Z + Z/3
    assert map_kernel(f) == G("Z + Z/3")


# --- extensions ------------------------------------------------------------------


def test_extension_examples():
    assert enumerate_extensions(cyc(2), cyc(2)) == {G("Z/2 + Z/2"), cyc(4)}
    assert enumerate_extensions(Z, Z) == {FgAbGroup(2)}
    assert enumerate_extensions(cyc(2), Z) == {G("Z + Z/2")}


def test_extension_free_kernel_absorbs_torsion():
    # 0 -> Z -> Z -> Z/2 -> 0 (multiplication by 2) is an extension too
    assert enumerate_extensions(Z, cyc(2)) == {Z, G("Z + Z/2")}


def test_extension_cap():
    with pytest.raises(OracleRefused):
        enumerate_extensions(cyc(200), cyc(100))
    with pytest.raises(OracleRefused):
        enumerate_extensions(cyc(6), cyc(6), cap=10)


@pytest.mark.parametrize("a, b", [
    ((2,), (2,)), ((2,), (4,)), ((4,), (2,)), ((2,), (2, 2)), ((2, 2), (2,)),
    ((3,), (3,)), ((2,), (3,)), ((6,), (2,)), ((), (4,)), ((2,), ()),
])
def test_extensions_against_subgroup_search(a, b):
    expected = oracles.finite_extensions(a, b)
    got = enumerate_extensions(FgAbGroup(0, a), FgAbGroup(0, b))
    assert {g.invariant_factors for g in got} == expected


@settings(max_examples=60, deadline=None)
@given(groups, groups)
def test_extension_invariants(a, b):
    try:
        exts = enumerate_extensions(a, b)
    except OracleRefused:
        return
    assert a + b in exts
    bound = torsion_order(a) * torsion_order(b)
    for g in exts:
        assert g.rank == a.rank + b.rank
        assert bound % torsion_order(g) == 0
    if a.rank == 0 or b.is_free:
        assert all(torsion_order(g) == bound for g in exts)


def test_snf_random_bulk():
    rng = random.Random(20261018)
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        check_snf([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
