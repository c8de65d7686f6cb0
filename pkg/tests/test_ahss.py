import random
from dataclasses import replace

import pytest

from spacegen import random_space
from boundaryk.abelian import FgAbGroup, OracleRefused, torsion_order
from boundaryk.ahss import (
    TorsionBounds,
    check_result,
    consistent_k_groups,
    k_parities,
    torsion_bounds,
)
from boundaryk.ktheory import compute_k_theory
from boundaryk.spaces import GradedGroup

G = FgAbGroup.parse


def coh(*texts):
    return GradedGroup.parse(texts)


def test_bounds_genus2(genus2):
    bundle = compute_k_theory(genus2).bundle
    assert torsion_bounds(bundle.groups) == TorsionBounds(2, 1, 1, 0)


def test_bounds_free():
    assert torsion_bounds(coh("Z", "Z^3", "Z")) == TorsionBounds(1, 1, 0, 0)


def test_bounds_synthetic():
    b = torsion_bounds(coh("0", "Z/2", "Z/4 + Z/2", "0"))
    assert (b.even_order_bound, b.even_generator_bound) == (8, 2)
    assert (b.odd_order_bound, b.odd_generator_bound) == (2, 1)


def test_check_genus2(genus2):
    r = compute_k_theory(genus2)
    b = torsion_bounds(r.bundle.groups)
    assert check_result(r, b, 2)
    corrupted = replace(r, k0=G("Z^5 + Z/4"))
    assert not check_result(corrupted, b, 2)


def test_check_free(hs3):
    r = compute_k_theory(hs3)
    assert check_result(r, torsion_bounds(r.bundle.groups), 3)


def test_check_bounded_is_vacuous(corpus):
    r = compute_k_theory(corpus["genus2-product"])
    assert check_result(r, TorsionBounds(), 4)


def test_check_monotone(genus2):
    r = compute_k_theory(genus2)
    rng = random.Random(5)
    for _ in range(50):
        b = TorsionBounds(*(rng.randint(1, 4) for _ in range(2)), *(rng.randint(0, 2) for _ in range(2)))
        bigger = TorsionBounds(b.even_order_bound * 2, b.odd_order_bound + 1,
                               b.even_generator_bound + 1, b.odd_generator_bound)
        if check_result(r, b, 2):
            assert check_result(r, bigger, 2)


def test_parities():
    assert k_parities(2) == ("even", "odd")
    assert k_parities(3) == ("odd", "even")


def test_consistent_groups_examples():
    # even columns of the genus-2 bundle: degree 2 is Z^4 + Z/2, degree 0 is Z
    assert consistent_k_groups(coh("Z", "0", "Z^4 + Z/2"), "even") == {G("Z^5 + Z/2")}
    assert consistent_k_groups(coh("Z", "Z^2", "Z^3", "Z"), "odd") == {G("Z^3")}
    assert consistent_k_groups(coh("Z/2", "0", "Z/2"), "even") == {G("Z/2 + Z/2"), G("Z/4")}


def test_consistent_groups_model_unknown_torsion(corpus):
    # the bounded higher-rank case: K0 = Z^35 + Z/t with t | 4, every t occurs
    r = compute_k_theory(corpus["genus2-product"])
    got = consistent_k_groups(r.bundle.groups, "even")
    assert got == {G("Z^35"), G("Z^35 + Z/2"), G("Z^35 + Z/4")}


def test_consistent_groups_cap():
    with pytest.raises(OracleRefused):
        consistent_k_groups(coh("Z/128", "0", "Z/128"), "even")


def test_exact_results_are_consistent(corpus):
    rng = random.Random(13)
    spaces = list(corpus.values()) + [random_space(rng) for _ in range(150)]
    for s in spaces:
        r = compute_k_theory(s)
        if not r.exact:
            continue
        p0, p1 = k_parities(s.dim)
        groups = r.bundle.groups
        b = torsion_bounds(groups)
        assert check_result(r, b, s.dim)
        k0s = consistent_k_groups(groups, p0)
        k1s = consistent_k_groups(groups, p1)
        assert r.k0 in k0s and r.k1 in k1s
        for g in k0s:
            assert b.order_bound(p0) % torsion_order(g) == 0
        assert max(torsion_order(g) for g in k0s) == b.order_bound(p0)
