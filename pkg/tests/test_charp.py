# test_charp.py
import random

import pytest

from charp import (CentralReducer, central_tower, frobenius_centrals, p_polynomial_for_derivation,
                   verify_freeness_rank)
from errors import DomainMismatch, NotFreeOverBase, PPolynomialSearchExceeded
from ore import OreTower, is_central
from scalar import prime_field
from standard_examples import (weyl_tower, jordan_tower, heisenberg_tower, polynomial_tower,
                               random_affine_tower)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_weyl_center_is_generated_by_frobenius_powers(p):
    T = weyl_tower(prime_field(p))
    C = central_tower(T)
    assert C.centrals == (T.parse(f"y^{p}"), T.parse(f"x^{p}"))
    assert C.exponents == (1, 1)
    assert C.rank == p ** 2
    assert verify_freeness_rank(C, 6) == p ** 2


def test_commutative_tower_has_rank_one(F5):
    C = central_tower(polynomial_tower(F5, ("a", "b")))
    assert C.exponents == (0, 0)
    assert C.s == 0
    assert verify_freeness_rank(C, 4) == 1
    assert [c.kind for c in C.contributions] == ["polynomial", "polynomial"]


@pytest.mark.parametrize("p", [2, 3])
def test_heisenberg_tower_twists_both_lower_levels(p):
    T = heisenberg_tower(prime_field(p))
    C = central_tower(T)
    assert C.exponents == (1, 1, 1)
    assert C.rank == p ** 3
    assert C.centrals[-1] == T.parse(f"y^{p}")
    assert C.contributions[-1].twisted == 2
    assert verify_freeness_rank(C, 6) == p ** 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_jordan_plane(p):
    T = jordan_tower(prime_field(p))
    C = central_tower(T)
    assert C.centrals == (T.parse(f"x^{p}"), T.parse(f"y^{p}"))
    assert C.rank == p ** 2
    assert verify_freeness_rank(C, 6) == p ** 2


@pytest.mark.parametrize("build", [weyl_tower, jordan_tower])
def test_remainder_route_agrees_with_the_minimal_exponent(build, F3):
    C = central_tower(build(F3))
    g = C.p_polynomials[-1]
    assert g.level_rank == 3
    assert g.cross_check_k == g.k == 1


def test_cross_check_is_skipped_above_the_rank_limit(F3):
    T = weyl_tower(F3)
    g = p_polynomial_for_derivation(T, 2, [T.parse("y^3")], cross_check_max_rank=2)
    assert g.k == 1
    assert g.cross_check_k is None


@pytest.mark.slow
def test_central_of_degree_p_squared_is_verified(F5):
    # d_c acts on span(a, b) with irreducible characteristic polynomial t^2 + t + 1
    T = OreTower.build(F5, ("a", "b", "c"), {"c": {"a": "b", "b": "4*a + 4*b"}})
    C = central_tower(T)
    assert C.contributions[-1].k == 2
    assert C.contributions[-1].degree == 25
    assert C.centrals[-1] == T.parse("c^25 + 4*c")
    assert is_central(C.centrals[-1])
    assert C.rank == 5 ** 4
    assert verify_freeness_rank(C, 4, random_checks=3) == C.rank


def test_frobenius_centrals_of_the_first_level(F3):
    T = weyl_tower(F3)
    assert frobenius_centrals(T, 1) == [T.parse("y^3")]


def test_p_polynomial_of_the_weyl_derivation(F3):
    T = weyl_tower(F3)
    g = p_polynomial_for_derivation(T, 2, [T.parse("y^3")])
    assert g.k == 1
    assert g.degree() == 3
    assert str(g) == "z^3"
    assert g.level_rank == 3


def test_affine_derivation_needs_a_linear_term(F5):
    T = OreTower.build(F5, ("a", "b"), {"b": {"a": "2*a + 1"}})
    g = p_polynomial_for_derivation(T, 2, [T.parse("a^5")])
    assert g.k == 1
    assert not g.coefficients[0].is_zero()
    assert is_central(central_tower(T).centrals[-1])


def test_search_bound_is_reported(F3):
    T = jordan_tower(F3)
    with pytest.raises(PPolynomialSearchExceeded) as excinfo:
        p_polynomial_for_derivation(T, 2, [T.parse("x^3")], k_max=0)
    assert excinfo.value.k_max == 0


def test_reducer_requires_monic_centrals(F3):
    T = weyl_tower(F3)
    with pytest.raises(NotFreeOverBase):
        CentralReducer(T, [T.parse("2*y^3")])


def test_reducer_reconstructs_elements(F3):
    T = weyl_tower(F3)
    C = central_tower(T)
    reducer = CentralReducer(T, C.centrals, "lowest")
    w = T.parse("x^4*y^5 + 2*x*y")
    assert reducer.reconstruct(reducer.reduce(w.terms)) == w
    assert len(reducer.basis()) == reducer.rank == 9


def test_rational_towers_are_refused(Q):
    with pytest.raises(DomainMismatch):
        central_tower(weyl_tower(Q))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("seed", range(20))
def test_random_two_level_towers_obey_the_p_power_law(p, seed):
    F = prime_field(p)
    T = random_affine_tower(F, random.Random(seed), levels=2)
    C = central_tower(T)
    assert C.rank == p ** C.s
    assert C.s <= 2
    for contribution in C.contributions:
        assert contribution.degree == p ** contribution.k
        assert contribution.k <= 1
    assert verify_freeness_rank(C, 6, random_checks=3) == C.rank


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(20))
def test_random_three_level_towers_obey_the_p_power_law(p, seed):
    F = prime_field(p)
    T = random_affine_tower(F, random.Random(seed), levels=3)
    C = central_tower(T)
    assert C.rank == p ** C.s
    assert all(is_central(c) for c in C.centrals)
    assert verify_freeness_rank(C, 6, random_checks=3) == C.rank
