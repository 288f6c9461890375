# test_reduction.py
import random
from fractions import Fraction

import pytest

from action import build_action, faithfulness_certificate
from errors import AlgebraError, DenominatorVanishes, DomainMismatch, NotSemisimple
from hopf import find_left_integral, counit_value
from ore import OreTower
from reduction import (PrimeSite, structure_constant_ring, good_primes, reduce_mod_p, validate_reduction,
                       certificate_mod_p, subdirect_injectivity_check)
from scalar import prime_field
from standard_examples import weyl_sign_action, sweedler_h4, polynomial_tower, c2_group_algebra


def test_structure_ring_of_the_sign_action(Q):
    R = structure_constant_ring(weyl_sign_action(Q))
    assert R.N == 2
    assert R.integral == (Fraction(1, 2), Fraction(1, 2))
    assert R.contains(Fraction(3, 4))
    assert not R.contains(Fraction(1, 3))


def test_structure_ring_needs_a_semisimple_algebra(Q):
    H = sweedler_h4(Q)
    S = build_action(H, polynomial_tower(Q, ("u",)),
                     {"1": {"u": "u"}, "g": {"u": "-u"}, "x": {"u": "0"}, "gx": {"u": "0"}})
    with pytest.raises(NotSemisimple):
        structure_constant_ring(S)


def test_structure_ring_is_formed_over_q(F5):
    with pytest.raises(DomainMismatch):
        structure_constant_ring(weyl_sign_action(F5))


def test_good_primes_skip_bad_divisors(Q):
    R = structure_constant_ring(weyl_sign_action(Q))
    assert [site.p for site in good_primes(R, Fraction(3), 2, 3)] == [5, 7, 11]
    assert [site.p for site in good_primes(R, Fraction(1, 7), 4, 2)] == [5, 11]
    assert good_primes(R, Fraction(1), 2, 0) == []
    with pytest.raises(AlgebraError):
        good_primes(R, Fraction(0), 2, 1)


def test_reduction_at_a_good_prime_passes_every_check(Q):
    S_5 = reduce_mod_p(weyl_sign_action(Q), PrimeSite(5))
    assert S_5.hopf.domain == prime_field(5)
    assert S_5.tower.coeff_domain == prime_field(5)
    assert validate_reduction(S_5) == {"hopf": True, "tower": True, "module_algebra": True,
                                       "semisimple": True, "cosemisimple": True}


def test_reduction_at_the_group_order_is_refused(Q):
    with pytest.raises(DenominatorVanishes):
        reduce_mod_p(weyl_sign_action(Q), PrimeSite(2))


def test_reduced_integral_has_unit_counit(Q):
    S_3 = reduce_mod_p(weyl_sign_action(Q), PrimeSite(3))
    integral = find_left_integral(S_3.hopf)
    assert integral.normalized == (2, 2)
    assert counit_value(S_3.hopf, integral.normalized) == 1


def test_vanishing_denominator_is_refused(Q):
    T = OreTower.build(Q, ("y", "x"), {"x": {"y": "1/3"}})
    S = build_action(c2_group_algebra(Q), T, {"1": {"y": "y", "x": "x"}, "g": {"y": "-y", "x": "-x"}})
    with pytest.raises(DenominatorVanishes):
        reduce_mod_p(S, PrimeSite(3))


def test_certificate_survives_reduction(Q):
    S = weyl_sign_action(Q)
    certificate = faithfulness_certificate(S, 4)
    site = PrimeSite(5)
    assert certificate_mod_p(certificate, site, reduce_mod_p(S, site))
    assert not certificate_mod_p(certificate, PrimeSite(2))


def test_subdirect_check_finds_a_detecting_prime(Q):
    R = structure_constant_ring(weyl_sign_action(Q))
    sites = [PrimeSite(p) for p in (2, 3, 5, 7)]
    report = subdirect_injectivity_check(R, [Fraction(6), Fraction(0), Fraction(35)], sites)
    assert [entry.detected_at for entry in report.entries] == [5, None, 2]
    assert report.consistent
    missed = subdirect_injectivity_check(R, [Fraction(30)], sites[:3])
    assert missed.undetected == [Fraction(30)]
    assert not missed.consistent


def test_certificate_survives_at_the_first_ten_good_primes(Q):
    S = weyl_sign_action(Q)
    R = structure_constant_ring(S)
    certificate = faithfulness_certificate(S, 8)
    sites = good_primes(R, certificate.determinant.payload, 2, 10)
    assert [site.p for site in sites] == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    for site in sites:
        assert certificate_mod_p(certificate, site, reduce_mod_p(S, site))


def test_subdirect_check_detects_random_dyadic_values(Q):
    R = structure_constant_ring(weyl_sign_action(Q))
    rng = random.Random(5)
    values = []
    while len(values) < 50:
        n = rng.randint(-10 ** 6, 10 ** 6)
        if n:
            values.append(Fraction(n, 2 ** rng.randint(0, 5)))
    assert all(R.contains(v) for v in values)
    sites = good_primes(R, Fraction(1), 2, 25)
    assert len(sites) == 25
    report = subdirect_injectivity_check(R, values, sites)
    assert report.undetected == []
    assert report.consistent
