# test_hopf.py
from fractions import Fraction

import pytest

from errors import EnumerationTooLarge, NotAHopfIdeal
from hopf import (validate_hopf_axioms, find_left_integral, cosemisimple_integral, is_cocommutative,
                  is_commutative, grouplike_elements, hopf_ideal_from_generators, quotient_by_hopf_ideal,
                  dual_hopf, multiply_vectors, apply_antipode)
from scalar import prime_field
from standard_examples import (c2_group_algebra, c3_group_algebra, s3_group_algebra, klein_group_algebra,
                               sweedler_h4, perturbed_hopf)


@pytest.mark.parametrize("builder", [c2_group_algebra, c3_group_algebra, s3_group_algebra,
                                     klein_group_algebra, sweedler_h4])
def test_standard_hopf_algebras_pass_every_axiom(Q, builder):
    assert validate_hopf_axioms(builder(Q)) == []


def _shift_comultiplication_to_left_factor(H):
    """C_2 with Delta(g) = g (x) 1."""
    H = perturbed_hopf(H, "comult", (1, 1, 1), Fraction(-1))
    return perturbed_hopf(H, "comult", (1, 1, 0), Fraction(1))


@pytest.mark.parametrize("perturb, expected", [
    (lambda H: perturbed_hopf(H, "counit", (1,), Fraction(1)),
     ["left_counit", "right_counit", "counit_multiplicative", "antipode_left", "antipode_right"]),
    (_shift_comultiplication_to_left_factor,
     ["left_counit", "antipode_left", "antipode_right"]),
    (lambda H: perturbed_hopf(H, "mult", (1, 1, 0), Fraction(1)),
     ["comult_multiplicative", "counit_multiplicative", "antipode_left", "antipode_right"]),
], ids=["counit", "comult", "mult"])
def test_perturbed_tables_report_exactly_the_broken_axioms(Q, perturb, expected):
    assert validate_hopf_axioms(perturb(c2_group_algebra(Q))) == expected


def test_group_algebra_over_a_prime_field_is_valid(F3):
    assert validate_hopf_axioms(c3_group_algebra(F3)) == []


def test_group_algebra_integral_is_the_averaging_element(Q):
    integral = find_left_integral(c2_group_algebra(Q))
    assert integral.semisimple
    assert integral.normalized == (Fraction(1, 2), Fraction(1, 2))


def test_group_algebra_in_dividing_characteristic_is_not_semisimple():
    assert not find_left_integral(c2_group_algebra(prime_field(2))).semisimple
    assert find_left_integral(c3_group_algebra(prime_field(2))).semisimple


def test_sweedler_algebra_is_neither_semisimple_nor_cocommutative(Q):
    H = sweedler_h4(Q)
    assert not find_left_integral(H).semisimple
    assert not cosemisimple_integral(H).semisimple
    assert not is_cocommutative(H)


def test_dual_of_group_algebra_is_a_hopf_algebra(Q):
    dual = dual_hopf(s3_group_algebra(Q))
    assert validate_hopf_axioms(dual) == []
    assert dual.basis_names[0] == "1*"
    assert is_commutative(dual)
    assert not is_cocommutative(dual)


@pytest.mark.parametrize("builder", [c2_group_algebra, c3_group_algebra, s3_group_algebra,
                                     klein_group_algebra, sweedler_h4])
def test_duality_is_an_involution_exchanging_commutativity(Q, builder):
    H = builder(Q)
    assert dual_hopf(dual_hopf(H)) == H
    assert is_cocommutative(H) == is_commutative(dual_hopf(H))
    assert is_commutative(H) == is_cocommutative(dual_hopf(H))


def test_grouplikes_are_enumerated_over_small_fields(F3, F5):
    assert len(grouplike_elements(c2_group_algebra(F5))) == 2
    assert len(grouplike_elements(klein_group_algebra(F3))) == 4
    assert len(grouplike_elements(sweedler_h4(F3))) == 2


@pytest.mark.parametrize("builder", [klein_group_algebra, s3_group_algebra, sweedler_h4])
def test_grouplikes_are_closed_under_product_and_antipode(F3, builder):
    H = builder(F3)
    grouplikes = set(grouplike_elements(H))
    assert H.unit in grouplikes
    for g in grouplikes:
        assert apply_antipode(H, g) in grouplikes
        for h in grouplikes:
            assert multiply_vectors(H, g, h) in grouplikes


def test_grouplike_enumeration_respects_its_limit(F5):
    with pytest.raises(EnumerationTooLarge):
        grouplike_elements(s3_group_algebra(F5), limit=100)


def test_grouplike_candidates_over_q(Q):
    H = c2_group_algebra(Q)
    half = (Fraction(1, 2), Fraction(1, 2))
    assert grouplike_elements(H, candidates=[H.basis_vector(1), half]) == [H.basis_vector(1)]


def test_quotient_by_augmentation_ideal_of_c2(Q):
    H = c2_group_algebra(Q)
    ideal = hopf_ideal_from_generators(H, [(Fraction(1), Fraction(-1))])
    assert ideal.failed_flags == []
    quotient = quotient_by_hopf_ideal(H, ideal)
    assert quotient.dim == 1
    assert validate_hopf_axioms(quotient) == []


def test_sweedler_modulo_its_nilpotent_part_is_a_group_algebra(Q):
    H = sweedler_h4(Q)
    ideal = hopf_ideal_from_generators(H, [H.basis_vector(2)])
    assert ideal.dimension == 2
    assert ideal.failed_flags == []
    quotient = quotient_by_hopf_ideal(H, ideal)
    assert quotient.dim == 2
    assert is_cocommutative(quotient)
    assert validate_hopf_axioms(quotient) == []


def test_non_coideal_cannot_be_quotiented(Q):
    H = c2_group_algebra(Q)
    ideal = hopf_ideal_from_generators(H, [(Fraction(1), Fraction(1))])
    assert "is_coideal" in ideal.failed_flags
    with pytest.raises(NotAHopfIdeal):
        quotient_by_hopf_ideal(H, ideal)
