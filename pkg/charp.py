# charp.py
"""
Central polynomial subrings of Ore towers over F_p.

Level by level: a level with zero derivation contributes its variable; a
level with derivation d replaces every earlier central c by c^p, writes d as
a matrix over B' = F_p[t_1, ...] (t_j standing for the j-th twisted central)
on the box basis of the level below, finds a monic p-polynomial g with
g(d) = 0 and contributes Theta = g(x_i).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from errors import (CentralityFailed, PPolynomialSearchExceeded, NotFreeOverBase,
                    ReductionMismatch, DomainMismatch)
from expression_utils import grlex_key
from ore import OreElement, multiply, is_central, monomials_up_to_degree
from scalar import Matrix, Scalar, PolynomialRing, solve_linear, char_poly

STRATEGIES = ("highest", "lowest")


def _require_prime_field(T):
    if T.coeff_domain.kind != "PrimeField":
        raise DomainMismatch(f"Central subrings are computed over a prime field, not {T.coeff_domain}.")
    return T.coeff_domain.p


def _reversed_key(exponents):
    return tuple(reversed(exponents))


class CentralReducer:
    """
    Writes elements in the span of x_1..x_m as combinations of box monomials
    x^b (b_j < deg c_j) with coefficients in B' = F_p[t_1..t_m], by repeated
    division by centrals c_1..c_m, each monic in its own variable.
    """

    def __init__(self, tower, centrals, strategy="highest"):
        if strategy not in STRATEGIES:
            raise ValueError(f"Unknown division strategy '{strategy}'. Expected one of {STRATEGIES}.")
        self.tower = tower
        self.centrals = list(centrals)
        self.count = len(self.centrals)
        self.strategy = strategy
        one = tower.coeff_domain.one
        self.degrees = []
        for j, c in enumerate(self.centrals):
            lead = c.leading_exponent()
            if (lead is None or c.highest_variable() != j or c.coefficient(lead) != one
                    or any(lead[m] for m in range(tower.n) if m != j)):
                raise NotFreeOverBase(f"Central {c} is not monic in {tower.vars[j]}.")
            self.degrees.append(lead[j])
        self.base_ring = PolynomialRing(tower.coeff_domain, tuple(f"t_{v}" for v in tower.vars[:self.count]))
        self._t = [self.base_ring.generator(name) for name in self.base_ring.vars]
        self._splits = {}
        self._powers = {}

    def basis(self):
        padding = (0,) * (self.tower.n - self.count)
        box = [tuple(b) + padding for b in itertools.product(*(range(D) for D in self.degrees))]
        return sorted(box, key=grlex_key)

    @property
    def rank(self):
        result = 1
        for D in self.degrees:
            result *= D
        return result

    def _split(self, exponents, j):
        key = (exponents, j)
        if key not in self._splits:
            T = self.tower
            shifted = exponents[:j] + (exponents[j] - self.degrees[j],) + exponents[j + 1:]
            product = T.mul_terms(self.centrals[j].terms, {shifted: T.coeff_domain.one})
            remainder = dict(T.monomial(exponents).terms)
            for e, c in product.items():
                T._add_into(remainder, e, T.coeff_domain.neg(c))
            self._splits[key] = (shifted, remainder)
        return self._splits[key]

    def reduce(self, terms):
        """Coordinates {box exponents: B' payload} of the element with the given terms."""
        B = self.base_ring
        n = self.tower.n
        working = {e: B.constant(c) for e, c in terms.items()}
        out = {}
        while working:
            e = max(working, key=_reversed_key)
            coefficient = working.pop(e)
            if B.is_zero(coefficient):
                continue
            if any(e[m] for m in range(self.count, n)):
                raise NotFreeOverBase(
                    f"Monomial {e} lies outside the span of {list(self.tower.vars[:self.count])}.")
            violating = [j for j in range(self.count) if e[j] >= self.degrees[j]]
            if not violating:
                value = B.add(out.get(e, B.zero), coefficient)
                if B.is_zero(value):
                    out.pop(e, None)
                else:
                    out[e] = value
                continue
            j = max(violating) if self.strategy == "highest" else min(violating)
            shifted, remainder = self._split(e, j)
            working[shifted] = B.add(working.get(shifted, B.zero), B.mul(coefficient, self._t[j]))
            for g, r in remainder.items():
                working[g] = B.add(working.get(g, B.zero), B.mul(coefficient, B.constant(r)))
        return out

    def _central_power(self, j, m):
        key = (j, m)
        if key not in self._powers:
            self._powers[key] = self.centrals[j] ** m
        return self._powers[key]

    def evaluate(self, coefficient):
        """Substitutes the centrals for the t variables of a B' payload."""
        T = self.tower
        total = T.zero()
        for exponents, c in self.base_ring.terms(coefficient):
            term = T.constant(c)
            for j, m in enumerate(exponents):
                if m:
                    term = multiply(term, self._central_power(j, m))
            total = total + term
        return total

    def reconstruct(self, coordinates):
        T = self.tower
        total = T.zero()
        for b, coefficient in coordinates.items():
            total = total + multiply(self.evaluate(coefficient), T.monomial(b))
        return total


@dataclass(frozen=True)
class PPolynomial:
    p: int
    k: int
    coefficients: tuple    # a_0 .. a_{k-1} as Scalars over B'
    base_ring: object
    level_rank: int
    cross_check_k: int | None = None

    def degree(self):
        return self.p ** self.k

    def __str__(self):
        pieces = [f"z^{self.p ** self.k}" if self.p ** self.k > 1 else "z"]
        for i in range(self.k - 1, -1, -1):
            a = self.coefficients[i]
            if a.is_zero():
                continue
            power = self.p ** i
            monomial = "z" if power == 1 else f"z^{power}"
            text = str(a)
            pieces.append(monomial if text == "1" else f"({text})*{monomial}")
        return " + ".join(pieces)


@dataclass(frozen=True)
class LevelContribution:
    level: int
    variable: str
    kind: str        # "polynomial" (zero derivation) or "ore"
    twisted: int     # earlier centrals raised to their p-th power at this level
    k: int
    degree: int
    exponent_gain: int


@dataclass(frozen=True)
class CentralSubringData:
    tower: object
    centrals: tuple
    exponents: tuple     # central of level i is monic of degree p^exponents[i] in x_i
    contributions: tuple
    p_polynomials: tuple
    p: int

    @property
    def s(self):
        return sum(self.exponents)

    @property
    def rank(self):
        return self.p ** self.s

    @property
    def degrees(self):
        return tuple(self.p ** e for e in self.exponents)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _twist(T, centrals, level, p):
    twisted = [c ** p for c in centrals]
    for c in twisted:
        if not is_central(c, level):
            raise CentralityFailed(f"{c} is not central in the first {level} levels.")
    return twisted


def _level_states(T, k_max, stop_level, cross_check_max_rank=9):
    """Yields (level, centrals, exponents, contribution, p_polynomial) for levels 1..stop_level."""
    p = _require_prime_field(T)
    centrals, exponents = [], []
    for i in range(stop_level):
        name = T.vars[i]
        if T.zero_level(i):
            centrals.append(T.gen(i))
            exponents.append(0)
            yield i + 1, list(centrals), list(exponents), \
                LevelContribution(i + 1, name, "polynomial", 0, 0, 1, 0), None
            continue
        twisted = _twist(T, centrals, i + 1, p)
        exponents = [e + 1 for e in exponents]
        g = p_polynomial_for_derivation(T, i + 1, twisted, k_max, cross_check_max_rank)
        reducer = CentralReducer(T, twisted)
        theta = T.monomial(tuple(p ** g.k if m == i else 0 for m in range(T.n)))
        for j, a in enumerate(g.coefficients):
            if a.is_zero():
                continue
            x_power = T.monomial(tuple(p ** j if m == i else 0 for m in range(T.n)))
            theta = theta + multiply(reducer.evaluate(a.payload), x_power)
        if not is_central(theta, i + 1):
            raise CentralityFailed(f"Constructed element {theta} is not central at level {i + 1}.")
        centrals = twisted + [theta]
        exponents.append(g.k)
        contribution = LevelContribution(i + 1, name, "ore", len(twisted), g.k, p ** g.k, len(twisted) + g.k)
        yield i + 1, list(centrals), list(exponents), contribution, g


def frobenius_centrals(T, level, centrals=None, k_max=4):
    """
    p-th powers of the central generators of the level-`level` algebra,
    verified central one level up (or in the whole tower at the top).
    """
    p = _require_prime_field(T)
    if centrals is None:
        centrals = []
        for _, centrals, _, _, _ in _level_states(T, k_max, level):
            pass
    return _twist(T, centrals, min(level + 1, T.n), p)


def _derivation_matrix(T, index, reducer, basis):
    B = reducer.base_ring
    position = {b: r for r, b in enumerate(basis)}
    columns = []
    for b in basis:
        image = T.derive_terms(index, {b: T.coeff_domain.one})
        column = [B.zero] * len(basis)
        for e, c in reducer.reduce(image).items():
            column[position[e]] = c
        columns.append(column)
    return Matrix.from_payload_columns(B, columns, len(basis))


def _solve_in_base(B, vectors, target):
    """
    Solves sum a_i vectors[i] = -target over Frac(B); returns the a_i as B
    payloads when a denominator-free solution was found, else None.
    """
    F = B.fraction_field()
    rows, rhs = [], []
    for position in range(len(target)):
        row = [v[position] for v in vectors]
        if all(B.is_zero(x) for x in row) and B.is_zero(target[position]):
            continue
        rows.append([F.from_poly(x) for x in row])
        rhs.append([F.from_poly(B.neg(target[position]))])
    if not rows:
        return [B.zero] * len(vectors)
    solved = solve_linear(Matrix(F, len(rows), len(vectors), rows), Matrix(F, len(rows), 1, rhs))
    if solved is None:
        return None
    particular = solved[0].column_payloads()
    if not all(F.is_polynomial(a) for a in particular):
        return None
    return [F.numerator(a) for a in particular]


def _apply_iterated(T, index, terms, times):
    for _ in range(times):
        if not terms:
            break
        terms = T.derive_terms(index, terms)
    return terms


def p_polynomial_for_derivation(T, level, base_centrals, k_max=4, cross_check_max_rank=9):
    """
    Monic p-polynomial g with g(d_level) = 0 on the algebra below `level`,
    whose coefficients lie in B' generated by `base_centrals`.
    """
    p = _require_prime_field(T)
    index = level - 1
    reducer = CentralReducer(T, base_centrals)
    B = reducer.base_ring
    basis = reducer.basis()
    M = _derivation_matrix(T, index, reducer, basis)

    powers = [M]
    found = None
    if M.is_zero():
        found = (0, [])
    else:
        for k in range(1, k_max + 1):
            powers.append(powers[-1].power(p))
            coefficients = _solve_in_base(B, [P.flatten() for P in powers[:k]], powers[k].flatten())
            if coefficients is not None:
                found = (k, coefficients)
                break
    if found is None:
        raise PPolynomialSearchExceeded(
            f"No p-polynomial for d_{T.vars[index]} with exponent up to {k_max}.", k_max=k_max)
    k, coefficients = found

    # Matrix level: M^{p^k} + sum a_i M^{p^i} = 0
    total = powers[k] if k else M
    if k:
        for a, P in zip(coefficients, powers):
            total = total + P.scale(a)
    if not total.is_zero():
        raise CentralityFailed(f"p-polynomial for d_{T.vars[index]} does not annihilate its matrix.")

    # Operator level, inside the algebra
    if k:
        multipliers = [reducer.evaluate(a) for a in coefficients]
        for b in basis:
            value = OreElement(T, _apply_iterated(T, index, {b: T.coeff_domain.one}, p ** k))
            for j, a in enumerate(multipliers):
                if a.is_zero():
                    continue
                image = OreElement(T, _apply_iterated(T, index, {b: T.coeff_domain.one}, p ** j))
                value = value + multiply(a, image)
            if not value.is_zero():
                raise CentralityFailed(f"g(d_{T.vars[index]}) does not vanish on {T.monomial(b)}.")

    cross_check_k = None
    if len(basis) <= cross_check_max_rank and k:
        # f = char_poly(M) divides g^(p^j) once p^j >= rank
        extra = 0
        while p ** extra < len(basis):
            extra += 1
        cross_check_k = _remainder_cross_check(M, p, k + extra)
        if cross_check_k is None:
            raise CentralityFailed(
                f"Characteristic polynomial of d_{T.vars[index]} divides no p-polynomial of exponent "
                f"up to {k + extra}, although g has exponent {k}.")
        if cross_check_k < k:
            raise CentralityFailed(
                f"Remainder route found exponent {cross_check_k} for d_{T.vars[index]}, below the minimal {k}.")

    return PPolynomial(
        p=p,
        k=k,
        coefficients=tuple(Scalar(B, a) for a in coefficients),
        base_ring=B,
        level_rank=len(basis),
        cross_check_k=cross_check_k,
    )


def _remainder_cross_check(M, p, k_max):
    """
    Characteristic-polynomial route: find k with z^{p^k} in the span of the
    lower z^{p^i} modulo f = char_poly(M), then confirm the resulting
    p-polynomial annihilates M. Returns that k, or None if none is found.
    """
    B = M.domain
    f = char_poly(M)
    if not f.evaluate_matrix(M).is_zero():
        raise CentralityFailed("Characteristic polynomial does not annihilate the derivation matrix.")
    remainders = []
    for k in range(k_max + 1):
        remainders.append(f.remainder_of_power(p ** k))
        coefficients = _solve_in_base(B, remainders[:k], remainders[k])
        if coefficients is None:
            continue
        total = M.power(p ** k)
        for i, a in enumerate(coefficients):
            total = total + M.power(p ** i).scale(a)
        if not total.is_zero():
            raise CentralityFailed("Remainder route produced a p-polynomial that does not annihilate d.")
        return k
    return None


def central_tower(T, k_max=4, cross_check_max_rank=9):
    """Central polynomial subring of the whole tower with its p-power rank."""
    p = _require_prime_field(T)
    # Theta may reach degree p^2; its commutators need room above that
    T = T.with_degree_bound(max(T.degree_bound, 2 * p ** 2 + T.n * p))
    centrals, exponents = [], []
    contributions, polynomials = [], []
    for _, centrals, exponents, contribution, g in _level_states(T, k_max, T.n, cross_check_max_rank):
        contributions.append(contribution)
        polynomials.append(g)
    for c in centrals:
        if not is_central(c):
            raise CentralityFailed(f"{c} is not central in the tower.")
    return CentralSubringData(
        tower=T,
        centrals=tuple(centrals),
        exponents=tuple(exponents),
        contributions=tuple(contributions),
        p_polynomials=tuple(polynomials),
        p=p,
    )


def verify_freeness_rank(C, degree_bound=6, random_checks=10, seed=20240601):
    """
    Reduces every monomial of degree <= degree_bound along two division
    orders, checks both agree and reconstruct the monomial, and returns the
    verified rank p^s.
    """
    T = C.tower
    reducers = [CentralReducer(T, C.centrals, strategy) for strategy in STRATEGIES]
    expected_degrees = list(C.degrees)
    if reducers[0].degrees != expected_degrees:
        raise ReductionMismatch(f"Central degrees {reducers[0].degrees} differ from the claimed {expected_degrees}.")

    def check(element):
        first, second = (r.reduce(element.terms) for r in reducers)
        if first != second:
            raise ReductionMismatch(f"Division orders disagree on {element}.")
        if reducers[0].reconstruct(first) != element:
            raise ReductionMismatch(f"Coordinates of {element} do not reconstruct it.")

    monomials = monomials_up_to_degree(T.n, degree_bound)
    for e in monomials:
        check(T.monomial(e))
    rng = random.Random(seed)
    D = T.coeff_domain
    for _ in range(random_checks):
        chosen = rng.sample(monomials, min(4, len(monomials)))
        check(T.element({e: D.random(rng) for e in chosen}))
    rank = reducers[0].rank
    if rank != C.rank:
        raise ReductionMismatch(f"Box basis has {rank} elements, expected {C.rank}.")
    return rank
