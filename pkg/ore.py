# ore.py
"""
Iterated Ore extensions of derivation type
    A = F[x_1][x_2; d_2] ... [x_n; d_n],   x_i a = a x_i + d_i(a).

Elements are kept in normal form: every monomial lists its variables in
increasing index order. Levels are numbered from 1 as in the tower
notation; exponent tuples are indexed from 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

from errors import (TowerMismatch, VariableOutOfLevel, DegreeBoundExceeded, AlgebraError, ParseError)
from expression_utils import parse_expression, format_terms, grlex_key, tokenize

DEFAULT_DEGREE_BOUND = 24
# Memoized monomial products and derivations per tower; each table is dropped when full
PRODUCT_CACHE_LIMIT = 200_000


def monomials_up_to_degree(n_vars, degree_bound):
    """Exponent tuples of total degree <= degree_bound, in ascending grlex order."""
    exponents = [e for e in itertools.product(range(degree_bound + 1), repeat=n_vars) if sum(e) <= degree_bound]
    return sorted(exponents, key=grlex_key)


def _freeze(terms):
    return tuple(sorted(terms.items(), key=lambda item: item[0]))


@dataclass(frozen=True)
class OreTower:
    coeff_domain: object
    vars: tuple
    derivations: tuple
    degree_bound: int = field(default=DEFAULT_DEGREE_BOUND, compare=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise AlgebraError(f"Duplicate variable names in tower {list(self.vars)}.")
        if self.coeff_domain.kind not in ("Rational", "PrimeField"):
            raise AlgebraError(f"Ore towers are defined over Q or a prime field, not {self.coeff_domain}.")
        if len(self.derivations) != n or any(len(row) != i for i, row in enumerate(self.derivations)):
            raise AlgebraError("Derivation table must list d_i(x_j) for every j < i.")
        for i, row in enumerate(self.derivations):
            for j, image in enumerate(row):
                for exponents, _ in image:
                    if len(exponents) != n:
                        raise AlgebraError(f"Derivation image d_{self.vars[i]}({self.vars[j]}) has the wrong arity.")
                    if any(exponents[m] for m in range(i, n)):
                        raise VariableOutOfLevel(
                            f"d_{self.vars[i]}({self.vars[j]}) mentions a variable outside level {i}.")

    @classmethod
    def build(cls, coeff_domain, var_names, derivations=None, degree_bound=DEFAULT_DEGREE_BOUND):
        """
        Builds a tower from {"x_i": {"x_j": "element string"}}; each image is
        parsed inside the levels below x_i, so it may be written in any order.
        """
        var_names = tuple(var_names)
        derivations = derivations or {}
        unknown = set(derivations) - set(var_names)
        if unknown:
            raise ParseError(f"Derivations given for unknown variables {sorted(unknown)}.", path="derivations")
        n = len(var_names)
        rows = []
        for i, name in enumerate(var_names):
            given = derivations.get(name, {})
            stray = set(given) - set(var_names[:i])
            if stray:
                raise VariableOutOfLevel(f"d_{name} may only be given on variables below {name}, not {sorted(stray)}.")
            lower = cls(coeff_domain, var_names[:i],
                        tuple(tuple(_freeze({e[:i]: c for e, c in image}) for image in row) for row in rows),
                        degree_bound)
            row = []
            for j in range(i):
                text = given.get(var_names[j], "0")
                mentioned = {value for kind, value in tokenize(str(text)) if kind == "name"}
                if mentioned & set(var_names[i:]):
                    raise VariableOutOfLevel(
                        f"d_{name}({var_names[j]}) = {text} mentions variables outside level {i + 1}.")
                element = lower.parse(text) if i else None
                row.append(_freeze({e + (0,) * (n - i): c for e, c in element.terms.items()}))
            rows.append(tuple(row))
        return cls(coeff_domain, var_names, tuple(rows), degree_bound)

    @property
    def n(self):
        return len(self.vars)

    def with_degree_bound(self, degree_bound):
        """The same tower with another product degree bound; elements of both compare equal."""
        if degree_bound == self.degree_bound:
            return self
        return OreTower(self.coeff_domain, self.vars, self.derivations, degree_bound)

    def _cache(self, name):
        return self._memo.setdefault(name, {})

    @staticmethod
    def _remember(cache, key, result):
        if len(cache) >= PRODUCT_CACHE_LIMIT:
            cache.clear()
        cache[key] = result

    @cached_property
    def _images(self):
        return [[dict(image) for image in row] for row in self.derivations]

    def derivation_image(self, i, j):
        """d_i(x_j) as an OreElement (0-based indices)."""
        return OreElement(self, self._images[i][j])

    def is_commutative(self):
        return all(not image for row in self.derivations for image in row)

    def zero_level(self, i):
        return all(not image for image in self.derivations[i])

    def reduce_coefficients(self, domain, function):
        """Tower over `domain` with every derivation coefficient mapped by `function`."""
        rows = []
        for row in self.derivations:
            rows.append(tuple(_freeze({e: function(c) for e, c in image if not domain.is_zero(function(c))})
                              for image in row))
        return OreTower(domain, self.vars, tuple(rows), self.degree_bound)

    # Element constructors, also used as the algebra for expression parsing
    def element(self, terms):
        return OreElement(self, terms)

    def zero(self):
        return OreElement(self, {})

    def one(self):
        return self.constant(self.coeff_domain.one)

    def constant(self, c):
        return OreElement(self, {(0,) * self.n: c})

    def monomial(self, exponents, c=None):
        return OreElement(self, {tuple(exponents): self.coeff_domain.one if c is None else c})

    def gen(self, index):
        exponents = [0] * self.n
        exponents[index] = 1
        return self.monomial(exponents)

    def generator(self, name):
        if name not in self.vars:
            raise KeyError(name)
        return self.gen(self.vars.index(name))

    def from_rational(self, value):
        return self.constant(self.coeff_domain.from_fraction(Fraction(value)))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return multiply(a, b)

    def neg(self, a):
        return -a

    def power(self, a, n):
        return a ** n

    def div(self, a, b):
        if not b.is_constant() or b.is_zero():
            raise AlgebraError("Elements may only be divided by nonzero constants.")
        return a.scale(self.coeff_domain.inv(b.constant_term()))

    def parse(self, text):
        if isinstance(text, OreElement):
            return text
        if isinstance(text, int):
            return self.from_rational(text)
        return parse_expression(str(text), self)

    # Normal-form arithmetic on term dictionaries
    def _check_degree(self, terms):
        for exponents in terms:
            if sum(exponents) > self.degree_bound:
                raise DegreeBoundExceeded(
                    f"Product reached total degree {sum(exponents)}, above the bound {self.degree_bound}.")

    def _add_into(self, target, exponents, c):
        D = self.coeff_domain
        value = D.add(target.get(exponents, D.zero), c)
        if D.is_zero(value):
            target.pop(exponents, None)
        else:
            target[exponents] = value

    def mul_terms(self, u, v):
        D = self.coeff_domain
        out = {}
        for e, a in u.items():
            for f, b in v.items():
                ab = D.mul(a, b)
                for g, c in self.monomial_product(e, f).items():
                    self._add_into(out, g, D.mul(ab, c))
        return out

    def monomial_product(self, e, f):
        cache = self._cache("product")
        key = (e, f)
        if key in cache:
            return cache[key]
        if sum(e) + sum(f) > self.degree_bound:
            raise DegreeBoundExceeded(
                f"Product of degree {sum(e) + sum(f)} exceeds the bound {self.degree_bound}.")
        D = self.coeff_domain
        top = max((m for m in range(self.n) if e[m]), default=None)
        if top is None or not any(f[m] for m in range(top)):
            result = {tuple(a + b for a, b in zip(e, f)): D.one}
        else:
            a = e[top]
            e_low = e[:top] + (0,) * (self.n - top)
            f_low = f[:top] + (0,) * (self.n - top)
            current = {f_low: D.one}
            result = {}
            for l in range(a + 1):
                if not current:
                    break
                binomial = D.from_int(comb(a, l))
                if not D.is_zero(binomial):
                    lower = self.mul_terms({e_low: D.one}, current) if any(e_low) else current
                    for g, c in lower.items():
                        exponents = g[:top] + (a - l + f[top],) + f[top + 1:]
                        self._add_into(result, exponents, D.mul(binomial, c))
                if l < a:
                    current = self.derive_terms(top, current)
            self._check_degree(result)
        self._remember(cache, key, result)
        return result

    def derive_monomial(self, k, g):
        """d_k(x^g) for a monomial in the variables below index k (Leibniz rule)."""
        cache = self._cache("derivation")
        key = (k, g)
        if key in cache:
            return cache[key]
        D = self.coeff_domain
        result = {}
        for j in range(k):
            m = g[j]
            image = self._images[k][j]
            if not m or not image:
                continue
            for r in range(m):
                left = g[:j] + (r,) + (0,) * (self.n - j - 1)
                right = (0,) * j + (m - 1 - r,) + g[j + 1:]
                piece = self.mul_terms(self.mul_terms({left: D.one}, image), {right: D.one})
                for exponents, c in piece.items():
                    self._add_into(result, exponents, c)
        self._remember(cache, key, result)
        return result

    def derive_terms(self, k, terms):
        D = self.coeff_domain
        out = {}
        for g, a in terms.items():
            for exponents, c in self.derive_monomial(k, g).items():
                self._add_into(out, exponents, D.mul(a, c))
        return out


class OreElement:
    """Immutable element of an OreTower in normal form."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower, terms):
        D = tower.coeff_domain
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "terms", {tuple(e): c for e, c in dict(terms).items() if not D.is_zero(c)})

    def __setattr__(self, name, value):
        raise AttributeError("OreElement values are immutable.")

    def _same_tower(self, other):
        if not isinstance(other, OreElement):
            return False
        if other.tower is not self.tower and other.tower != self.tower:
            raise TowerMismatch("Elements belong to different Ore towers.")
        return True

    def __add__(self, other):
        if not self._same_tower(other):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            self.tower._add_into(out, e, c)
        return OreElement(self.tower, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        D = self.tower.coeff_domain
        return OreElement(self.tower, {e: D.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, OreElement):
            return NotImplemented
        return multiply(self, other)

    def __pow__(self, n):
        result = self.tower.one()
        for _ in range(n):
            result = multiply(result, self)
        return result

    def scale(self, c):
        D = self.tower.coeff_domain
        return OreElement(self.tower, {e: D.mul(c, a) for e, a in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.tower.n, self.tower.coeff_domain.zero)

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), self.tower.coeff_domain.zero)

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index):
        return max((e[index] for e in self.terms), default=-1)

    def highest_variable(self):
        """0-based index of the highest variable occurring, or -1 for constants."""
        return max((m for e in self.terms for m in range(len(e)) if e[m]), default=-1)

    def leading_exponent(self):
        """Largest exponent when exponents of higher variables are compared first."""
        if not self.terms:
            return None
        return max(self.terms, key=lambda e: tuple(reversed(e)))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def map_coefficients(self, tower, function):
        return OreElement(tower, {e: function(c) for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, OreElement):
            return NotImplemented
        return (self.tower is other.tower or self.tower == other.tower) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_terms(self.sorted_terms(), self.tower.vars, self.tower.coeff_domain.signed_text)

    def __repr__(self):
        return f"OreElement({self})"


def multiply(a, b):
    if a.tower is not b.tower and a.tower != b.tower:
        raise TowerMismatch("Cannot multiply elements of different Ore towers.")
    return OreElement(a.tower, a.tower.mul_terms(a.terms, b.terms))


def commutator(a, b):
    return multiply(a, b) - multiply(b, a)


def apply_derivation(T, level, a):
    """d_level(a) for `a` in the subalgebra generated by x_1..x_{level-1}."""
    if a.tower is not T and a.tower != T:
        raise TowerMismatch("Element does not belong to the given tower.")
    if not 1 <= level <= T.n:
        raise VariableOutOfLevel(f"Tower has no level {level}.")
    if a.highest_variable() >= level - 1:
        raise VariableOutOfLevel(
            f"{a} is not in the subalgebra below {T.vars[level - 1]}.")
    return OreElement(T, T.derive_terms(level - 1, a.terms))


def iterate_derivation(T, level, a, times):
    for _ in range(times):
        a = apply_derivation(T, level, a)
        if a.is_zero():
            break
    return a


def validate_tower(T):
    """Checks each d_i is a derivation of the level below it; returns failure identifiers."""
    failures = []
    for i, row in enumerate(T.derivations):
        for j, image in enumerate(row):
            if any(e[m] for e, _ in image for m in range(i, T.n)):
                failures.append(f"variable_out_of_level:d_{T.vars[i]}({T.vars[j]})")
    if failures:
        return failures
    for i in range(2, T.n):
        for k in range(1, i):
            for j in range(k):
                x_j, x_k = T.gen(j), T.gen(k)
                left = apply_derivation(T, i + 1, T.derivation_image(k, j))
                right = (commutator(T.derivation_image(i, k), x_j)
                         + commutator(x_k, T.derivation_image(i, j)))
                if left != right:
                    failures.append(f"derivation_compatibility:d_{T.vars[i]}[{T.vars[k]},{T.vars[j]}]")
    return failures


def is_central(a, level=None):
    """True iff `a` commutes with x_1..x_level (all generators by default)."""
    T = a.tower
    count = T.n if level is None else level
    return all(multiply(a, T.gen(m)) == multiply(T.gen(m), a) for m in range(count))
