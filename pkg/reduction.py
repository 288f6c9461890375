# reduction.py
"""
Reduction of a rational action modulo good primes.

Every constant defining the action (Hopf tables, both normalized integrals,
action images, derivation images) lies in R = Z[1/N] for the lcm N of their
denominators. Primes not dividing N are the maximal ideals of R; residue
fields are F_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import nextprime

from action import ActionSpec, validate_module_algebra, certificate_matrix
from errors import NotSemisimple, DomainMismatch, ReductionMismatch, AlgebraError, DenominatorVanishes
from hopf import validate_hopf_axioms, find_left_integral, cosemisimple_integral
from ore import validate_tower
from scalar import prime_field, determinant


@dataclass(frozen=True)
class StructureConstantRing:
    generators: tuple   # distinct nonzero constants, sorted
    N: int
    integral: tuple
    dual_integral: tuple

    def contains(self, value):
        """True iff every prime of the denominator of `value` divides N."""
        denominator = Fraction(value).denominator
        while denominator > 1:
            step = gcd(denominator, self.N)
            if step == 1:
                return False
            denominator //= step
        return True


@dataclass(frozen=True)
class PrimeSite:
    p: int

    @property
    def field(self):
        return prime_field(self.p)

    def residue(self, value):
        return self.field.from_fraction(Fraction(value))


def _action_constants(S):
    H, T = S.hopf, S.tower
    yield from H.unit
    yield from H.counit
    for row in H.antipode:
        yield from row
    for table in (H.mult, H.comult):
        for row in table:
            for column in row:
                yield from column
    for row in T.derivations:
        for image in row:
            for _, c in image:
                yield c
    for row in S.images:
        for element in row:
            yield from element.terms.values()


def structure_constant_ring(S):
    """The ring Z[1/N] generated by every constant of the action, both integrals included."""
    if S.hopf.domain.kind != "Rational":
        raise DomainMismatch(f"Structure constant rings are formed over Q, not {S.hopf.domain}.")
    integral = find_left_integral(S.hopf)
    if not integral.semisimple:
        raise NotSemisimple("H has no left integral with nonzero counit.")
    dual = cosemisimple_integral(S.hopf)
    if not dual.semisimple:
        raise NotSemisimple("The dual of H has no left integral with nonzero counit.")
    constants = set(_action_constants(S)) | set(integral.normalized) | set(dual.normalized)
    generators = tuple(sorted(c for c in constants if c != 0))
    N = lcm(1, *(c.denominator for c in generators))
    return StructureConstantRing(generators=generators, N=N, integral=integral.normalized,
                                 dual_integral=dual.normalized)


def good_primes(R, a, q, count):
    """The first `count` primes p > q with p not dividing N and a nonzero modulo p."""
    a = Fraction(a)
    if a == 0:
        raise AlgebraError("The witness for good primes must be nonzero.")
    sites = []
    p = max(int(q), 1)
    while len(sites) < count:
        p = int(nextprime(p))
        if R.N % p == 0 or a.numerator % p == 0 or a.denominator % p == 0:
            continue
        sites.append(PrimeSite(p))
    return sites


def _denominator_bound(S):
    try:
        return structure_constant_ring(S).N
    except NotSemisimple:
        return lcm(1, *(Fraction(c).denominator for c in _action_constants(S)))


def reduce_mod_p(S, site):
    """The action with every constant replaced by its residue modulo site.p."""
    if S.hopf.domain.kind != "Rational":
        raise DomainMismatch(f"Only rational actions are reduced, not actions over {S.hopf.domain}.")
    N = _denominator_bound(S)
    if N % site.p == 0:
        raise DenominatorVanishes(f"p = {site.p} divides the structure constant denominator N = {N}.")
    F = site.field
    residue = F.from_fraction
    hopf = S.hopf.map_scalars(residue, F)
    tower = S.tower.reduce_coefficients(F, residue)
    images = tuple(tuple(element.map_coefficients(tower, residue) for element in row) for row in S.images)
    return ActionSpec(hopf, tower, images)


def validate_reduction(S_p, degree_bound=3):
    """Flags for one site: every validator and both (co)semisimplicity checks."""
    return {
        "hopf": not validate_hopf_axioms(S_p.hopf),
        "tower": not validate_tower(S_p.tower),
        "module_algebra": not validate_module_algebra(S_p, degree_bound),
        "semisimple": find_left_integral(S_p.hopf).semisimple,
        "cosemisimple": cosemisimple_integral(S_p.hopf).semisimple,
    }


def certificate_mod_p(certificate, site, reduced_action=None):
    """
    True iff the reduced certificate matrix is nonsingular over F_p. With a
    reduced action the matrix is also recomputed from it and must agree.
    """
    F = site.field
    if certificate.matrix.domain.kind != "Rational":
        raise DomainMismatch("Certificates are reduced from Q.")
    reduced = certificate.matrix.map(F.from_fraction, F)
    if reduced_action is not None:
        recomputed = certificate_matrix(reduced_action, certificate, weight=F.from_fraction(certificate.weight))
        if recomputed != reduced:
            raise ReductionMismatch(f"Certificate matrix recomputed at p = {site.p} differs from its reduction.")
    return not determinant(reduced).is_zero()


@dataclass(frozen=True)
class SubdirectEntry:
    value: Fraction
    detected_at: int | None


@dataclass(frozen=True)
class SubdirectReport:
    entries: tuple
    primes: tuple

    @property
    def undetected(self):
        return [e.value for e in self.entries if e.value != 0 and e.detected_at is None]

    @property
    def consistent(self):
        """Nonzero values are all detected and zero is detected nowhere."""
        return not self.undetected and all(e.detected_at is None for e in self.entries if e.value == 0)


def subdirect_injectivity_check(R, values, sites):
    """For each value, the first site where its residue is nonzero."""
    entries = []
    for value in values:
        value = Fraction(value)
        detected = None
        for site in sites:
            try:
                residue = site.residue(value)
            except DenominatorVanishes:
                continue
            if residue != 0:
                detected = site.p
                break
        entries.append(SubdirectEntry(value, detected))
    return SubdirectReport(entries=tuple(entries), primes=tuple(site.p for site in sites))
