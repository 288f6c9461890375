# test_scalar.py
import random
from fractions import Fraction

import pytest

from config import PipelineDefaults
from errors import AlgebraError, DenominatorVanishes, DomainMismatch
from scalar import (Matrix, UnivariatePoly, determinant, nullspace, solve_linear, char_poly, rank,
                    poly_domain, fraction_domain, prime_field)


def test_rational_arithmetic_from_strings(Q):
    a = Q.scalar("3/4")
    assert a * 2 == Fraction(3, 2)
    assert (a - 1).payload == Fraction(-1, 4)
    assert a.inverse() == Fraction(4, 3)


def test_prime_field_inverts_fractions(F5):
    assert prime_field(7).scalar("1/3") == 5
    assert F5.scalar(7) == 2
    with pytest.raises(DenominatorVanishes):
        F5.from_fraction(Fraction(1, 10))


def test_prime_field_rejects_composite_modulus():
    with pytest.raises(AlgebraError):
        prime_field(8)


def test_mixing_domains_is_refused(Q, F5):
    with pytest.raises(DomainMismatch):
        Q.scalar(1) + F5.scalar(1)


def test_determinant_and_nullspace_over_q(Q):
    assert determinant(Matrix.from_values(Q, [[1, 2], [3, 4]])) == -2
    assert nullspace(Matrix.from_values(Q, [[1, 1], [2, 2]])) == [[1, -1]]


def test_inconsistent_system_has_no_solution(Q):
    M = Matrix.from_values(Q, [[1, 1], [1, 1]])
    assert solve_linear(M, Matrix.column(Q, [1, 2])) is None


def test_solve_linear_returns_particular_and_kernel(Q):
    M = Matrix.from_values(Q, [[1, 1]])
    particular, kernel = solve_linear(M, Matrix.column(Q, [3]))
    assert particular.column_payloads() == [3, 0]
    assert len(kernel) == 1


def test_fraction_free_determinant_over_polynomial_ring(F5):
    P = poly_domain(F5, ["t"])
    t = P.generator("t")
    M = Matrix(P, 2, 2, [[t, P.one], [P.one, t]])
    assert determinant(M).payload == t ** 2 - 1


def test_char_poly_of_nilpotent_block(Q):
    f = char_poly(Matrix.from_values(Q, [[0, 1], [0, 0]]))
    assert f.coefficients == (0, 0, 1)
    assert f.evaluate_matrix(Matrix.from_values(Q, [[0, 1], [0, 0]])).is_zero()


def test_remainder_of_power_modulo_quadratic(F5):
    f = UnivariatePoly(F5, (4, 0, 1))
    assert f.remainder_of_power(5) == [0, 1]
    assert f.remainder_of_power(4) == [1, 0]


def test_matrix_shape_is_checked(Q):
    with pytest.raises(AlgebraError):
        Matrix(Q, 2, 2, [[1, 2]])


def _random_matrix(D, rng, rows, cols):
    return Matrix(D, rows, cols, [[D.random(rng) for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("field", ["Q", "F3"])
def test_cayley_hamilton_on_random_matrices(field, request):
    D = request.getfixturevalue(field)
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(100):
        M = _random_matrix(D, rng, 4, 4)
        assert char_poly(M).evaluate_matrix(M).is_zero()


@pytest.mark.parametrize("field", ["Q", "F5"])
def test_determinant_is_multiplicative(field, request):
    D = request.getfixturevalue(field)
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(100):
        A, B = _random_matrix(D, rng, 3, 3), _random_matrix(D, rng, 3, 3)
        assert determinant(A @ B) == determinant(A) * determinant(B)


def test_solutions_substitute_back_exactly(Q):
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(100):
        M = _random_matrix(Q, rng, 3, 4)
        b = _random_matrix(Q, rng, 3, 1)
        solved = solve_linear(M, b)
        if solved is None:
            assert rank(M) < 3
            continue
        particular, kernel = solved
        assert M @ particular == b
        assert all((M @ v).is_zero() for v in kernel)


@pytest.mark.parametrize("field", ["Q", "F3", "F5"])
def test_field_axioms_on_random_triples(field, request):
    D = request.getfixturevalue(field)
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(1000):
        a, b, c = (D.random(rng) for _ in range(3))
        assert D.add(D.add(a, b), c) == D.add(a, D.add(b, c))
        assert D.mul(D.mul(a, b), c) == D.mul(a, D.mul(b, c))
        assert D.add(a, b) == D.add(b, a)
        assert D.mul(a, b) == D.mul(b, a)
        assert D.mul(a, D.add(b, c)) == D.add(D.mul(a, b), D.mul(a, c))
        assert D.add(a, D.zero) == a
        assert D.mul(a, D.one) == a
        assert D.is_zero(D.add(a, D.neg(a)))
        if not D.is_zero(a):
            assert D.mul(a, D.inv(a)) == D.one


def test_canonical_forms_are_idempotent(F5):
    P = poly_domain(F5, ["s", "t"])
    F = fraction_domain(P)
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(100):
        a = P.random(rng)
        assert P.normalize(a) == a
        assert P.from_terms(dict(P.terms(a))) == a
        x = F.random(rng)
        assert F.normalize(x) == x
        assert F.denominator(x).LC == 1
        c = P.zero
        while not c:
            c = P.random(rng)
        assert F.normalize((P.mul(x[0], c), P.mul(x[1], c))) == x


def test_nullspace_over_a_prime_field(F3):
    assert nullspace(Matrix.from_values(F3, [[1, 1]])) == [[1, 2]]


def test_determinant_of_a_triangular_polynomial_matrix(F3):
    P = poly_domain(F3, ["t"])
    t = P.generator("t")
    assert determinant(Matrix(P, 2, 2, [[t, P.one], [P.zero, t]])).payload == t ** 2


def test_char_poly_of_a_diagonal_matrix(Q):
    rng = random.Random(PipelineDefaults.RANDOM_SEED)
    for _ in range(20):
        a, b = Q.random(rng), Q.random(rng)
        f = char_poly(Matrix(Q, 2, 2, [[a, Q.zero], [Q.zero, b]]))
        assert f.coefficients == (a * b, -(a + b), 1)
