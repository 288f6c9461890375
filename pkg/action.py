# action.py
"""
Hopf module-algebra actions on Ore towers.

An action is fixed by the images f_ij = b_i . x_j of the generators; it is
extended to monomials through the comultiplication,
    h . (x_j w) = sum (h_(1) . x_j)(h_(2) . w),
splitting off the lowest variable so the left factor stays in normal order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from errors import NotFaithfulAtBound, StabilizationNotReached, AlgebraError
from expression_utils import grlex_key
from hopf import (coproduct, counit_value, multiply_vectors, hopf_ideal_from_generators,
                  quotient_by_hopf_ideal, quotient_complement)
from ore import OreElement, multiply, monomials_up_to_degree
from scalar import Matrix, Scalar, rref, nullspace, determinant


@dataclass(frozen=True)
class ActionSpec:
    hopf: object
    tower: object
    images: tuple
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.hopf.domain != self.tower.coeff_domain:
            raise AlgebraError(f"Hopf algebra over {self.hopf.domain} cannot act on a tower over "
                               f"{self.tower.coeff_domain}.")
        if len(self.images) != self.hopf.dim or any(len(row) != self.tower.n for row in self.images):
            raise AlgebraError("Action images must give b_i . x_j for every basis element and generator.")

    def image(self, i, j):
        return self.images[i][j]


def build_action(hopf, tower, images):
    """Builds an ActionSpec from {"b_i": {"x_j": "element string"}}."""
    rows = []
    for name in hopf.basis_names:
        given = images[name]
        rows.append(tuple(tower.parse(given[var]) for var in tower.vars))
    return ActionSpec(hopf, tower, tuple(rows))


def iterated_coproduct(S, k, m):
    """Delta^(m-1)(b_k) as {(a_1, ..., a_m): coefficient}."""
    cache = S._memo.setdefault("coproduct", {})
    key = (k, m)
    if key in cache:
        return cache[key]
    H = S.hopf
    D = H.domain
    if m == 1:
        result = {(k,): D.one}
    else:
        result = {}
        for prefix, c in iterated_coproduct(S, k, m - 1).items():
            for (a, b), e in coproduct(H, H.basis_vector(prefix[-1])).items():
                index = prefix[:-1] + (a, b)
                value = D.add(result.get(index, D.zero), D.mul(c, e))
                if D.is_zero(value):
                    result.pop(index, None)
                else:
                    result[index] = value
    cache[key] = result
    return result


def act_basis(S, k, exponents):
    """b_k . x^exponents as a term dictionary (memoized)."""
    cache = S._memo.setdefault("basis_action", {})
    key = (k, exponents)
    if key in cache:
        return cache[key]
    H, T = S.hopf, S.tower
    D = T.coeff_domain
    lowest = next((m for m, e in enumerate(exponents) if e), None)
    if lowest is None:
        value = H.counit[k]
        result = {} if D.is_zero(value) else {exponents: value}
    else:
        rest = exponents[:lowest] + (exponents[lowest] - 1,) + exponents[lowest + 1:]
        result = {}
        for (a, b), c in coproduct(H, H.basis_vector(k)).items():
            left = S.images[a][lowest].terms
            if not left:
                continue
            right = act_basis(S, b, rest)
            if not right:
                continue
            for e, value in T.mul_terms(left, right).items():
                T._add_into(result, e, D.mul(c, value))
    cache[key] = result
    return result


def act(S, h, a):
    """h . a for a coefficient vector h of H and an OreElement a."""
    T = S.tower
    D = T.coeff_domain
    result = {}
    for k, coefficient in enumerate(h):
        if D.is_zero(coefficient):
            continue
        for exponents, c in a.terms.items():
            scale = D.mul(coefficient, c)
            for e, value in act_basis(S, k, exponents).items():
                T._add_into(result, e, D.mul(scale, value))
    return OreElement(T, result)


def _diagonal_pair(S, k, u, v):
    """sum (b_k(1) . u)(b_k(2) . v)"""
    H = S.hopf
    total = S.tower.zero()
    for (a, b), c in coproduct(H, H.basis_vector(k)).items():
        total = total + multiply(act(S, H.basis_vector(a), u), act(S, H.basis_vector(b), v)).scale(c)
    return total


def validate_module_algebra(S, degree_bound=3):
    """Returns failure identifiers; empty iff the module-algebra checks pass up to `degree_bound`."""
    H, T = S.hopf, S.tower
    failures = []
    basis = [H.basis_vector(i) for i in range(H.dim)]

    for j in range(T.n):
        if act(S, H.unit, T.gen(j)) != T.gen(j):
            failures.append("unit_action")
            break

    monomials = [T.monomial(e) for e in monomials_up_to_degree(T.n, degree_bound)]
    associative = True
    for i, j in itertools.product(range(H.dim), repeat=2):
        product = multiply_vectors(H, basis[i], basis[j])
        for w in monomials:
            if act(S, basis[i], act(S, basis[j], w)) != act(S, product, w):
                associative = False
                break
        if not associative:
            failures.append("module_associativity")
            break

    generators = [T.gen(j) for j in range(T.n)]
    multiplicative = all(act(S, basis[k], multiply(u, v)) == _diagonal_pair(S, k, u, v)
                         for k in range(H.dim) for u in generators for v in generators)
    if not multiplicative:
        failures.append("multiplicativity")

    for k in range(H.dim):
        relation_ok = True
        for hi in range(T.n):
            for lo in range(hi):
                x_hi, x_lo = generators[hi], generators[lo]
                expanded = (_diagonal_pair(S, k, x_hi, x_lo) - _diagonal_pair(S, k, x_lo, x_hi)
                            - act(S, basis[k], T.derivation_image(hi, lo)))
                if not expanded.is_zero():
                    relation_ok = False
        if not relation_ok:
            failures.append("tower_relation")
            break
    return failures


# ---------------------------------------------------------------------------
# Annihilators of tensor powers
# ---------------------------------------------------------------------------

def tensor_action(S, k, tensor):
    """b_k acting diagonally on a pure tensor of monomials; {tuple of exponents: coefficient}."""
    D = S.hopf.domain
    m = len(tensor)
    result = {}
    for indices, c in iterated_coproduct(S, k, m).items():
        factors = [act_basis(S, a, w) for a, w in zip(indices, tensor)]
        if any(not f for f in factors):
            continue
        for combination in itertools.product(*(f.items() for f in factors)):
            value = c
            for _, coefficient in combination:
                value = D.mul(value, coefficient)
            key = tuple(e for e, _ in combination)
            updated = D.add(result.get(key, D.zero), value)
            if D.is_zero(updated):
                result.pop(key, None)
            else:
                result[key] = updated
    return result


def _pure_tensors(n_vars, m, degree_bound):
    monomials = monomials_up_to_degree(n_vars, degree_bound)
    return itertools.product(monomials, repeat=m)


def annihilator_of_tensor_power(S, m, degree_bound, start=None):
    """
    Basis of K_m = Ann_H(A^{(x)m}) restricted to tensors of monomials of degree
    <= degree_bound. `start` is a basis of a subspace known to contain K_m.
    """
    H = S.hopf
    D = H.domain
    d = H.dim
    kernel = [tuple(v) for v in start] if start is not None else [H.basis_vector(i) for i in range(d)]
    for tensor in _pure_tensors(S.tower.n, m, degree_bound):
        if not kernel:
            break
        images = [tensor_action(S, k, tensor) for k in range(d)]
        coordinates = sorted(set().union(*images))
        rows = []
        for coordinate in coordinates:
            row = []
            for vector in kernel:
                total = D.zero
                for k, coefficient in enumerate(vector):
                    if not D.is_zero(coefficient):
                        total = D.add(total, D.mul(coefficient, images[k].get(coordinate, D.zero)))
                row.append(total)
            if any(not D.is_zero(x) for x in row):
                rows.append(row)
        if not rows:
            continue
        combinations = nullspace(Matrix(D, len(rows), len(kernel), rows))
        kernel = [tuple(_combine(D, combination, kernel)) for combination in combinations]
    if kernel:
        reduced, pivots = rref(Matrix(D, len(kernel), d, kernel))
        kernel = list(reduced.entries[:len(pivots)])
    return [tuple(v) for v in kernel]


def _combine(D, coefficients, vectors):
    out = [D.zero] * len(vectors[0])
    for c, v in zip(coefficients, vectors):
        if D.is_zero(c):
            continue
        out = [D.add(x, D.mul(c, y)) for x, y in zip(out, v)]
    return out


@dataclass(frozen=True)
class AnnihilatorChain:
    levels: tuple  # (m, degree_bound, basis) records in computation order
    stabilization_index: int
    degree_bound: int
    radical: tuple

    def basis(self, m):
        """The last computed basis of K_m."""
        found = [basis for index, _, basis in self.levels if index == m]
        if not found:
            raise KeyError(m)
        return found[-1]


def annihilator_chain(S, degree_bound):
    """
    Computes K_1, K_2, ... until K_m = K_{2m} at the bound and again at
    bound + 2; an empty K_m stops the search immediately.
    """
    H = S.hopf
    levels = []
    m = 1
    while True:
        if m > H.dim:
            raise StabilizationNotReached(
                f"Annihilator chain did not stabilize by m = {H.dim} at degree bound {degree_bound}; "
                "raise the bound.")
        k_m = annihilator_of_tensor_power(S, m, degree_bound)
        levels.append((m, degree_bound, tuple(k_m)))
        if not k_m:
            return AnnihilatorChain(tuple(levels), m, degree_bound, ())
        k_2m = annihilator_of_tensor_power(S, 2 * m, degree_bound, start=k_m)
        levels.append((2 * m, degree_bound, tuple(k_2m)))
        if len(k_2m) == len(k_m):
            wider = degree_bound + 2
            k_m_wide = annihilator_of_tensor_power(S, m, wider, start=k_m)
            levels.append((m, wider, tuple(k_m_wide)))
            if not k_m_wide:
                return AnnihilatorChain(tuple(levels), m, wider, ())
            k_2m_wide = annihilator_of_tensor_power(S, 2 * m, wider, start=k_m_wide)
            levels.append((2 * m, wider, tuple(k_2m_wide)))
            if len(k_2m_wide) == len(k_m_wide):
                return AnnihilatorChain(tuple(levels), m, wider, tuple(k_m_wide))
        m += 1


def inner_faithful_radical(S, degree_bound):
    """
    The stabilized annihilator K as HopfIdealData together with H/K.
    K = 0 means the action is inner faithful at this bound.
    """
    chain = annihilator_chain(S, degree_bound)
    ideal = hopf_ideal_from_generators(S.hopf, chain.radical)
    return ideal, quotient_by_hopf_ideal(S.hopf, ideal)


def quotient_action(S, ideal, quotient=None):
    """The action of H/I induced on the same tower."""
    quotient = quotient or quotient_by_hopf_ideal(S.hopf, ideal)
    complement = quotient_complement(S.hopf, ideal)
    return ActionSpec(quotient, S.tower, tuple(S.images[i] for i in complement))


# ---------------------------------------------------------------------------
# Faithfulness certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    tensor_power: int
    vectors: tuple      # pure tensors w_k, each a tuple of exponent tuples
    functionals: tuple  # (k, lambda): coefficient of lambda in b_i . w_k
    weight: object      # payload clearing every denominator
    matrix: Matrix
    determinant: Scalar

    @property
    def dimension(self):
        return len(self.functionals)


def _tensor_key(tensor):
    return tuple(grlex_key(e) for e in tensor)


def faithfulness_certificate(S, degree_bound, tensor_power=1):
    """
    Finds coefficient functionals g_j at monomials lambda_j of b_i . w_{k_j}
    such that the d x d matrix g_j(b_i . w_{k_j}) is nonsingular.
    """
    H = S.hopf
    D = H.domain
    d = H.dim
    tensors = sorted(_pure_tensors(S.tower.n, tensor_power, degree_bound), key=_tensor_key)
    columns = []
    column_keys = []
    for tensor in tensors:
        images = [tensor_action(S, k, tensor) for k in range(d)]
        for coordinate in sorted(set().union(*images), key=_tensor_key):
            columns.append([images[i].get(coordinate, D.zero) for i in range(d)])
            column_keys.append((tensor, coordinate))
        matrix = Matrix.from_payload_columns(D, columns, d)
        _, pivots = rref(matrix)
        columns = [columns[j] for j in pivots]
        column_keys = [column_keys[j] for j in pivots]
        if len(pivots) == d:
            break
    if len(columns) < d:
        raise NotFaithfulAtBound(
            f"The basis of H acts with rank {len(columns)} < {d} on monomials of degree <= {degree_bound}.",
            degree_bound=degree_bound, rank=len(columns))

    if D.kind == "Rational":
        weight = Fraction(lcm(*(c.denominator for column in columns for c in column)))
    else:
        weight = D.one
    vectors = []
    for tensor, _ in column_keys:
        if tensor not in vectors:
            vectors.append(tensor)
    functionals = tuple((vectors.index(tensor), coordinate) for tensor, coordinate in column_keys)
    scaled = [[D.mul(weight, c) for c in column] for column in columns]
    matrix = Matrix.from_payload_columns(D, scaled, d)
    return Certificate(
        tensor_power=tensor_power,
        vectors=tuple(vectors),
        functionals=functionals,
        weight=weight,
        matrix=matrix,
        determinant=determinant(matrix),
    )


def certificate_matrix(S, certificate, weight=None):
    """Recomputes the certificate matrix from an action (possibly a reduction of the original)."""
    H = S.hopf
    D = H.domain
    weight = D.one if weight is None else weight
    columns = []
    for k, coordinate in certificate.functionals:
        tensor = certificate.vectors[k]
        columns.append([D.mul(weight, tensor_action(S, i, tensor).get(coordinate, D.zero))
                        for i in range(H.dim)])
    return Matrix.from_payload_columns(D, columns, H.dim)


def radical_is_in_counit_kernel(S, radical):
    D = S.hopf.domain
    return all(D.is_zero(counit_value(S.hopf, v)) for v in radical)
