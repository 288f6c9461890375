# test_action.py
import pytest

from action import (build_action, act, validate_module_algebra, annihilator_chain, annihilator_of_tensor_power,
                    inner_faithful_radical, quotient_action, faithfulness_certificate, certificate_matrix,
                    radical_is_in_counit_kernel)
from errors import NotFaithfulAtBound
from hopf import validate_hopf_axioms
from standard_examples import (c2_group_algebra, weyl_tower, polynomial_tower, weyl_sign_action, trivial_action,
                               klein_first_factor_action, s3_permutation_action, sign_action, heisenberg_tower)


def test_sign_action_is_a_module_algebra(Q):
    assert validate_module_algebra(weyl_sign_action(Q)) == []


def test_sign_action_fixing_the_central_variable(Q):
    assert validate_module_algebra(sign_action(heisenberg_tower(Q), fixed=("z",))) == []


def test_negating_one_weyl_generator_breaks_the_relation(Q):
    T = weyl_tower(Q)
    S = build_action(c2_group_algebra(Q), T, {"1": {"y": "y", "x": "x"}, "g": {"y": "y", "x": "-x"}})
    assert "tower_relation" in validate_module_algebra(S)


def test_action_extends_multiplicatively(Q):
    S = weyl_sign_action(Q)
    g = S.hopf.basis_vector(1)
    w = S.tower.parse("y*x^2")
    assert act(S, g, w) == -w
    assert act(S, S.hopf.unit, w) == w


def test_permutation_action_moves_variables(Q):
    S = s3_permutation_action(Q)
    c123 = S.hopf.basis_vector(S.hopf.basis_names.index("c123"))
    assert act(S, c123, S.tower.parse("x1*x2^2")) == S.tower.parse("x2*x3^2")


def test_faithful_action_has_empty_radical(Q):
    chain = annihilator_chain(weyl_sign_action(Q), 4)
    assert chain.radical == ()
    assert chain.stabilization_index == 1


def test_trivial_action_radical_is_the_augmentation_ideal(Q):
    S = trivial_action(c2_group_algebra(Q), polynomial_tower(Q))
    chain = annihilator_chain(S, 4)
    assert chain.radical == ((1, -1),)
    assert radical_is_in_counit_kernel(S, chain.radical)
    ideal, quotient = inner_faithful_radical(S, 4)
    assert ideal.dimension == 1
    assert quotient.dim == 1


def test_klein_action_factors_through_its_first_factor(Q):
    S = klein_first_factor_action(Q)
    ideal, quotient = inner_faithful_radical(S, 3)
    assert ideal.dimension == 2
    assert quotient.dim == 2
    S_q = quotient_action(S, ideal, quotient)
    assert validate_hopf_axioms(S_q.hopf) == []
    assert validate_module_algebra(S_q) == []


def test_certificate_is_nonsingular_and_reproducible(Q):
    S = weyl_sign_action(Q)
    certificate = faithfulness_certificate(S, 4)
    assert certificate.dimension == 2
    assert not certificate.determinant.is_zero()
    assert certificate_matrix(S, certificate, weight=certificate.weight) == certificate.matrix


def test_certificate_for_permutation_action(Q):
    certificate = faithfulness_certificate(s3_permutation_action(Q), 4)
    assert certificate.dimension == 6
    assert not certificate.determinant.is_zero()


def test_trivial_action_has_no_certificate(Q):
    S = trivial_action(c2_group_algebra(Q), polynomial_tower(Q))
    with pytest.raises(NotFaithfulAtBound) as excinfo:
        faithfulness_certificate(S, 4)
    assert excinfo.value.rank == 1


def test_annihilator_of_first_tensor_power(Q):
    assert annihilator_of_tensor_power(weyl_sign_action(Q), 1, 1) == []
    assert annihilator_of_tensor_power(trivial_action(c2_group_algebra(Q), polynomial_tower(Q)), 1, 2) == [(1, -1)]
