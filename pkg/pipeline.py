# pipeline.py
"""
End-to-end run on a rational action: inner-faithful quotient, structure
constant ring, faithfulness certificate, good primes, per-prime reduction
with central subring and p-power rank, then the lift back to Q.

Library code stays silent; with verbose=True progress goes to stderr in the
"--- Starting ... ---" format so JSON on stdout is unaffected.
"""
import sys
from dataclasses import dataclass, field
from math import factorial, gcd

from action import annihilator_chain, quotient_action, faithfulness_certificate
from charp import central_tower, verify_freeness_rank
from config import PipelineDefaults
from data_parser import document_digest, encode_spec, validation_failures
from errors import AlgebraError, NotSemisimple, NotFaithfulAtBound
from hopf import (hopf_ideal_from_generators, quotient_by_hopf_ideal, is_cocommutative,
                  grouplike_elements)
from reduction import (structure_constant_ring, good_primes, reduce_mod_p, validate_reduction,
                       certificate_mod_p, subdirect_injectivity_check)

FACTORS = "FactorsThroughGroupAlgebra"
HYPOTHESIS_FAILED = "HypothesisFailed"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PipelineConfig:
    prime_count: int = PipelineDefaults.PRIME_COUNT
    q_override: int | None = None
    degree_bound: int = PipelineDefaults.DEGREE_BOUND
    k_max: int = PipelineDefaults.K_MAX
    output_format: str = "json"
    certificate_degree: int = PipelineDefaults.CERTIFICATE_MAX_DEGREE
    validation_degree: int = PipelineDefaults.VALIDATION_DEGREE
    grouplike_limit: int = PipelineDefaults.GROUPLIKE_ENUMERATION_LIMIT
    cross_check_max_rank: int = PipelineDefaults.CROSS_CHECK_MAX_RANK

    def __post_init__(self):
        if self.prime_count < 0:
            raise ValueError(f"prime_count must be non-negative, got {self.prime_count}.")
        if self.degree_bound < 2:
            raise ValueError(f"degree_bound must be at least 2, got {self.degree_bound}.")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"Unknown output format '{self.output_format}'. Expected 'json' or 'text'.")

    def as_dict(self):
        return {"prime_count": self.prime_count, "q_override": self.q_override,
                "degree_bound": self.degree_bound, "k_max": self.k_max}


@dataclass(frozen=True)
class Verdict:
    kind: str
    which: str | None = None
    where: str | None = None
    reason: str | None = None

    def describe(self):
        if self.kind == FACTORS:
            return "Verdict: the action factors through a group algebra."
        if self.kind == HYPOTHESIS_FAILED:
            return f"Verdict: hypothesis '{self.which}' failed at {self.where}."
        return f"Verdict: inconclusive ({self.reason})."


@dataclass
class PrimeRecord:
    prime: int
    validators: dict = field(default_factory=dict)
    semisimple: bool = False
    cosemisimple: bool = False
    certificate_nonzero: bool = False
    centrals: list = field(default_factory=list)
    rank: dict | None = None
    coprime: bool = False
    gcd_equivalence: bool = False
    cocommutative: bool = False
    grouplike_count: int | None = None
    error: str | None = None


@dataclass
class ReductionReport:
    input_digest: str
    config: dict
    hopf_dim: int
    radical_dim: int | None = None
    quotient_dim: int | None = None
    annihilator: dict | None = None
    q: int | None = None
    structure_ring: dict | None = None
    certificate: dict | None = None
    primes: list = field(default_factory=list)
    lift: dict | None = None
    verdict: Verdict | None = None


def _progress(verbose, message):
    if verbose:
        print(message, file=sys.stderr)


def certify_quotient(S, chain, certificate_degree):
    """Certificate on the first tensor power, up to the stabilization index, that admits one."""
    last_error = None
    for tensor_power in range(1, max(chain.stabilization_index, 1) + 1):
        try:
            return faithfulness_certificate(S, certificate_degree, tensor_power=tensor_power)
        except NotFaithfulAtBound as e:
            last_error = e
    raise last_error


def _examine_prime(S_q, site, certificate, cfg, dim, verbose):
    p = site.p
    record = PrimeRecord(prime=p)
    stage = "reduce"
    try:
        S_p = reduce_mod_p(S_q, site)
        stage = "validate"
        flags = validate_reduction(S_p, cfg.validation_degree)
        record.validators = {name: flags[name] for name in ("hopf", "tower", "module_algebra")}
        record.semisimple = flags["semisimple"]
        record.cosemisimple = flags["cosemisimple"]
        stage = "certificate"
        record.certificate_nonzero = certificate_mod_p(certificate, site, S_p)
        stage = "central_tower"
        C = central_tower(S_p.tower, cfg.k_max, cfg.cross_check_max_rank)
        rank = verify_freeness_rank(C, cfg.degree_bound, seed=PipelineDefaults.RANDOM_SEED)
        record.centrals = [str(c) for c in C.centrals]
        record.rank = {"p": p, "s": C.s}
        record.coprime = gcd(rank, factorial(dim)) == 1
        record.gcd_equivalence = record.coprime == (C.s == 0 or p > dim)
        stage = "cocommutativity"
        record.cocommutative = is_cocommutative(S_p.hopf)
        if p ** dim <= cfg.grouplike_limit:
            record.grouplike_count = len(grouplike_elements(S_p.hopf, limit=cfg.grouplike_limit))
    except AlgebraError as e:
        record.error = f"{stage} at p={p}: {e}"
        _progress(verbose, f"ERROR: {record.error}")
    return record


def lift_check(S_q, R, sites):
    """Cocommutativity of H/K over Q, with the antisymmetrized comultiplication checked at the sites."""
    H = S_q.hopf
    d = H.dim
    values = [H.comult[k][i][j] - H.comult[k][j][i] for k in range(d) for i in range(d) for j in range(i + 1, d)]
    nonzero = [v for v in values if v != 0]
    check = subdirect_injectivity_check(R, nonzero, sites)
    return {
        "cocommutative": is_cocommutative(H),
        "antisymmetric_nonzero": len(nonzero),
        "subdirect_detected": not check.undetected,
    }


def assemble_verdict(report):
    if not report.primes:
        return Verdict(INCONCLUSIVE, reason="no primes")
    for record in report.primes:
        if record.error:
            return Verdict(INCONCLUSIVE, reason=record.error)
    for record in report.primes:
        where = f"p={record.prime}"
        for name, ok in record.validators.items():
            if not ok:
                return Verdict(HYPOTHESIS_FAILED, which=name, where=where)
        checks = (("semisimple", record.semisimple), ("cosemisimple", record.cosemisimple),
                  ("certificate", record.certificate_nonzero), ("gcd_equivalence", record.gcd_equivalence),
                  ("coprime", record.coprime), ("consistency", record.cocommutative))
        for name, ok in checks:
            if not ok:
                return Verdict(HYPOTHESIS_FAILED, which=name, where=where)
    lift = report.lift
    # antisymmetrized constants vanish iff H/K is cocommutative; nonzero ones survive at some site
    if lift["cocommutative"] != (lift["antisymmetric_nonzero"] == 0) or not lift["subdirect_detected"]:
        return Verdict(HYPOTHESIS_FAILED, which="consistency", where="Q")
    if not lift["cocommutative"]:
        return Verdict(HYPOTHESIS_FAILED, which="lift", where="Q")
    return Verdict(FACTORS)


def run_pipeline(S, cfg=None, document=None, verbose=False):
    """Runs every stage on a rational action and returns a ReductionReport with its verdict."""
    cfg = cfg or PipelineConfig()
    report = ReductionReport(
        input_digest=document_digest(document if document is not None else encode_spec(S)),
        config=cfg.as_dict(),
        hopf_dim=S.hopf.dim,
    )

    def finish(verdict):
        report.verdict = verdict
        _progress(verbose, f"--- Finished: {verdict.describe()} ---")
        return report

    _progress(verbose, "--- Starting validation over Q ---")
    if S.hopf.domain.kind != "Rational":
        return finish(Verdict(INCONCLUSIVE, reason=f"input is over {S.hopf.domain}, not Q"))
    failures = validation_failures(S, cfg.validation_degree)
    if failures:
        return finish(Verdict(HYPOTHESIS_FAILED, which=failures[0], where="Q"))

    _progress(verbose, f"--- Starting inner-faithful radical (degree bound {cfg.degree_bound}) ---")
    try:
        chain = annihilator_chain(S, cfg.degree_bound)
        ideal = hopf_ideal_from_generators(S.hopf, chain.radical)
        quotient = quotient_by_hopf_ideal(S.hopf, ideal)
        S_q = quotient_action(S, ideal, quotient)
    except AlgebraError as e:
        return finish(Verdict(INCONCLUSIVE, reason=f"radical: {e}"))
    report.radical_dim = ideal.dimension
    report.quotient_dim = quotient.dim
    report.annihilator = {"stabilization_index": chain.stabilization_index, "degree_bound": chain.degree_bound}
    _progress(verbose, f"Radical of dimension {ideal.dimension}; quotient of dimension {quotient.dim}.")

    _progress(verbose, "--- Starting structure constant ring ---")
    try:
        R = structure_constant_ring(S_q)
    except NotSemisimple as e:
        _progress(verbose, f"WARNING: {e}")
        return finish(Verdict(HYPOTHESIS_FAILED, which="semisimple", where="Q"))
    except AlgebraError as e:
        return finish(Verdict(INCONCLUSIVE, reason=f"structure_ring: {e}"))
    report.structure_ring = {"N": R.N, "generator_count": len(R.generators)}

    _progress(verbose, "--- Starting faithfulness certificate ---")
    try:
        certificate = certify_quotient(S_q, chain, cfg.certificate_degree)
    except AlgebraError as e:
        return finish(Verdict(INCONCLUSIVE, reason=f"certificate: {e}"))
    report.certificate = {"tensor_power": certificate.tensor_power, "dimension": certificate.dimension,
                          "determinant": str(certificate.determinant)}

    dim = quotient.dim
    report.q = cfg.q_override if cfg.q_override is not None else factorial(dim)
    sites = good_primes(R, certificate.determinant.payload, report.q, cfg.prime_count)
    _progress(verbose, f"Good primes: {[site.p for site in sites]}")

    for site in sites:
        _progress(verbose, f"--- Starting prime {site.p} ---")
        report.primes.append(_examine_prime(S_q, site, certificate, cfg, dim, verbose))

    report.lift = lift_check(S_q, R, sites)
    return finish(assemble_verdict(report))
