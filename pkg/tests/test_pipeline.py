# test_pipeline.py
import dataclasses
from fractions import Fraction

import pytest

from config import PipelineDefaults
from pipeline import (PipelineConfig, run_pipeline, lift_check, assemble_verdict, FACTORS, HYPOTHESIS_FAILED,
                      INCONCLUSIVE, Verdict)
from reduction import PrimeSite, structure_constant_ring
from report_generator import emit_report, report_from_json, write_report
from standard_examples import weyl_sign_action, perturbed_hopf


def test_weyl_sign_action_factors_through_a_group_algebra(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=2))
    assert report.verdict == Verdict(FACTORS)
    assert report.q == 2
    assert report.radical_dim == 0
    assert [record.prime for record in report.primes] == [3, 5]
    for record in report.primes:
        assert record.rank == {"p": record.prime, "s": 2}
        assert record.coprime and record.gcd_equivalence
        assert record.grouplike_count == 2
        assert record.error is None


def test_default_configuration_examines_five_primes(corpus_spec):
    assert PipelineDefaults.PRIME_COUNT == 5
    report = run_pipeline(corpus_spec("weyl_c2.json"))
    assert report.verdict == Verdict(FACTORS)
    assert [record.prime for record in report.primes] == [3, 5, 7, 11, 13]
    for record in report.primes:
        assert all(record.validators.values())
        assert record.semisimple and record.cosemisimple and record.certificate_nonzero
        assert record.rank == {"p": record.prime, "s": 2}
        assert record.coprime and record.cocommutative
    assert [record.grouplike_count for record in report.primes] == [2, 2, 2, 2, 2]
    assert emit_report(report) == emit_report(run_pipeline(corpus_spec("weyl_c2.json")))


def _with_comultiplication_shift(S, delta):
    # Delta(g) gains delta * 1 (x) g, leaving one antisymmetrized constant equal to delta
    return dataclasses.replace(S, hopf=perturbed_hopf(S.hopf, "comult", (1, 0, 1), delta))


def test_lift_reports_antisymmetric_constants_and_their_sites(Q):
    S = weyl_sign_action(Q)
    R = structure_constant_ring(S)
    assert lift_check(S, R, [PrimeSite(3)]) == {"cocommutative": True, "antisymmetric_nonzero": 0,
                                                 "subdirect_detected": True}
    skewed = _with_comultiplication_shift(S, Fraction(3))
    assert lift_check(skewed, R, [PrimeSite(3)]) == {"cocommutative": False, "antisymmetric_nonzero": 1,
                                                      "subdirect_detected": False}
    assert lift_check(skewed, R, [PrimeSite(3), PrimeSite(5)])["subdirect_detected"]


def test_undetected_antisymmetric_constant_fails_consistency(corpus_spec, Q):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1))
    assert [record.prime for record in report.primes] == [3]
    S = weyl_sign_action(Q)
    R = structure_constant_ring(S)
    skewed = _with_comultiplication_shift(S, Fraction(3))

    report.lift = lift_check(skewed, R, [PrimeSite(3)])
    assert assemble_verdict(report) == Verdict(HYPOTHESIS_FAILED, which="consistency", where="Q")

    report.lift = lift_check(skewed, R, [PrimeSite(5)])
    assert assemble_verdict(report) == Verdict(HYPOTHESIS_FAILED, which="lift", where="Q")

    report.lift = {"cocommutative": True, "antisymmetric_nonzero": 2, "subdirect_detected": True}
    assert assemble_verdict(report) == Verdict(HYPOTHESIS_FAILED, which="consistency", where="Q")


def test_trivial_action_reduces_to_the_one_dimensional_quotient(corpus_spec):
    report = run_pipeline(corpus_spec("trivial_c2_polynomial.json"), PipelineConfig(prime_count=2))
    assert report.radical_dim == 1
    assert report.quotient_dim == 1
    assert report.q == 1
    assert [record.prime for record in report.primes] == [2, 3]
    assert report.verdict.kind == FACTORS


def test_invalid_action_fails_the_module_algebra_hypothesis(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2_bad_sign.json", validate=False))
    assert report.verdict.kind == HYPOTHESIS_FAILED
    assert report.verdict.which.startswith("module_algebra:")
    assert report.verdict.where == "Q"
    assert report.primes == []


def test_no_primes_is_inconclusive(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=0))
    assert report.verdict == Verdict(INCONCLUSIVE, reason="no primes")


def test_prime_field_input_is_inconclusive(F5):
    report = run_pipeline(weyl_sign_action(F5), PipelineConfig(prime_count=1))
    assert report.verdict.kind == INCONCLUSIVE


def test_q_override_moves_the_first_prime(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1, q_override=10))
    assert report.q == 10
    assert report.primes[0].prime == 11


def test_config_is_validated():
    with pytest.raises(ValueError):
        PipelineConfig(prime_count=-1)
    with pytest.raises(ValueError):
        PipelineConfig(degree_bound=1)
    with pytest.raises(ValueError):
        PipelineConfig(output_format="xml")


def test_json_report_parses_back(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1))
    text = emit_report(report, "json")
    assert report_from_json(text) == report
    assert emit_report(report_from_json(text), "json") == text


def test_same_document_gives_the_same_report(corpus_spec):
    first = emit_report(run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1)))
    second = emit_report(run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1)))
    assert first == second


def test_text_report_ends_with_the_verdict(corpus_spec):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=1))
    text = emit_report(report, "text")
    assert "cocommutative" in text
    assert "Structure constant ring: Z[1/2]" in text
    assert text.rstrip().splitlines()[-1] == "Verdict: the action factors through a group algebra."


def test_report_is_written_to_disk(corpus_spec, tmp_path):
    report = run_pipeline(corpus_spec("weyl_c2.json"), PipelineConfig(prime_count=0))
    path = write_report(report, str(tmp_path / "out" / "report.txt"), "text")
    with open(path, encoding="utf-8") as f:
        assert f.read().rstrip().endswith("Verdict: inconclusive (no primes).")


@pytest.mark.slow
@pytest.mark.parametrize("file_name", ["klein_weyl_first_factor.json", "jordan_c2.json",
                                       "heisenberg_c2.json", "s3_permutation.json"])
def test_corpus_actions_factor_through_group_algebras(corpus_spec, file_name):
    report = run_pipeline(corpus_spec(file_name), PipelineConfig(prime_count=2))
    assert report.verdict.kind == FACTORS
    assert all(record.error is None for record in report.primes)


@pytest.mark.slow
def test_klein_action_keeps_only_its_sign_factor(corpus_spec):
    report = run_pipeline(corpus_spec("klein_weyl_first_factor.json"), PipelineConfig(prime_count=1))
    assert report.radical_dim == 2
    assert report.q == 2


@pytest.mark.slow
def test_permutation_action_uses_the_group_order_factorial(corpus_spec):
    report = run_pipeline(corpus_spec("s3_permutation.json"), PipelineConfig(prime_count=1))
    assert report.q == 720
    assert report.primes[0].prime == 727
    assert report.primes[0].rank == {"p": 727, "s": 0}
    assert report.primes[0].grouplike_count is None
