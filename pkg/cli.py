# cli.py
import argparse
import json
import sys

from action import annihilator_chain, quotient_action
from charp import central_tower, verify_freeness_rank
from config import PipelineDefaults, load_json_document
from data_parser import parse_spec, encode_spec, validation_failures
from errors import AlgebraError, ParseError, ValidationError, DenominatorVanishes
from hopf import (find_left_integral, cosemisimple_integral, dual_hopf, hopf_ideal_from_generators,
                  quotient_by_hopf_ideal)
from pipeline import PipelineConfig, run_pipeline, certify_quotient, INCONCLUSIVE
from reduction import PrimeSite, reduce_mod_p, validate_reduction
from report_generator import (emit_report, write_report, encode_central_subring, encode_certificate,
                              central_subring_table)
from scalar import prime_field

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2


def _print_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def _load(path, validate=True):
    document = load_json_document(path)
    return document, parse_spec(document, validate=validate)


def command_validate(args):
    _, spec = _load(args.file, validate=False)
    failures = validation_failures(spec)
    _print_json({"valid": not failures, "failures": failures})
    return EXIT_OK if not failures else EXIT_INPUT_ERROR


def command_integral(args):
    _, spec = _load(args.file)
    H = spec.hopf
    result = {}
    for name, algebra, integral in (("integral", H, find_left_integral(H)),
                                    ("dual_integral", dual_hopf(H), cosemisimple_integral(H))):
        result[name] = {
            "space": [algebra.format_vector(v) for v in integral.space_basis],
            "normalized": None if integral.normalized is None else algebra.format_vector(integral.normalized),
        }
    result["semisimple"] = result["integral"]["normalized"] is not None
    result["cosemisimple"] = result["dual_integral"]["normalized"] is not None
    _print_json(result)
    return EXIT_OK


def _tower_mod_p(tower, p):
    F = prime_field(p)
    if tower.coeff_domain.kind == "Rational":
        return tower.reduce_coefficients(F, F.from_fraction)
    if tower.coeff_domain != F:
        raise ParseError(f"Tower is over {tower.coeff_domain}, not F_{p}.", path="tower.coeff_field")
    return tower


def command_center(args):
    _, spec = _load(args.file)
    tower = _tower_mod_p(spec.tower, args.prime)
    print(f"--- Starting central subring computation over F_{args.prime} ---", file=sys.stderr)
    C = central_tower(tower, args.kmax, PipelineDefaults.CROSS_CHECK_MAX_RANK)
    result = encode_central_subring(C)
    result["verified_rank"] = verify_freeness_rank(C, args.degree, seed=PipelineDefaults.RANDOM_SEED)
    print(central_subring_table(C), file=sys.stderr)
    _print_json(result)
    return EXIT_OK


def command_reduce(args):
    _, spec = _load(args.file)
    reduced = reduce_mod_p(spec, PrimeSite(args.prime))
    _print_json({"prime": args.prime, "flags": validate_reduction(reduced), "action": encode_spec(reduced)})
    return EXIT_OK


def command_faithful(args):
    _, spec = _load(args.file)
    H = spec.hopf
    chain = annihilator_chain(spec, args.degree)
    ideal = hopf_ideal_from_generators(H, chain.radical)
    quotient = quotient_by_hopf_ideal(H, ideal)
    result = {
        "degree_bound": args.degree,
        "stabilization_index": chain.stabilization_index,
        "radical": [H.format_vector(v) for v in ideal.basis],
        "quotient_basis": list(quotient.basis_names),
        "certificate_degree": args.certificate_degree,
    }
    reduced = quotient_action(spec, ideal, quotient)
    result["certificate"] = encode_certificate(reduced, certify_quotient(reduced, chain, args.certificate_degree))
    _print_json(result)
    return EXIT_OK


def command_pipeline(args):
    document, spec = _load(args.file)
    cfg = PipelineConfig(prime_count=args.primes, q_override=args.q, degree_bound=args.degree,
                         k_max=args.kmax, output_format=args.format)
    report = run_pipeline(spec, cfg, document=document, verbose=True)
    if args.output:
        path = write_report(report, args.output, args.format)
        print(f"--- Report saved to: {path} ---", file=sys.stderr)
    else:
        sys.stdout.write(emit_report(report, args.format))
    return EXIT_INCONCLUSIVE if report.verdict.kind == INCONCLUSIVE else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        description="Reduces Hopf actions on Ore towers modulo good primes and decides whether "
                    "they factor through a group algebra."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Run the Hopf, tower and module-algebra validators.")
    validate.add_argument("file")
    validate.set_defaults(handler=command_validate)

    integral = commands.add_parser("integral", help="Normalized integrals of H and of its dual.")
    integral.add_argument("file")
    integral.set_defaults(handler=command_integral)

    center = commands.add_parser("center", help="Central polynomial subring of the tower over F_p.")
    center.add_argument("file")
    center.add_argument("--prime", type=int, required=True)
    center.add_argument("--kmax", type=int, default=PipelineDefaults.K_MAX)
    center.add_argument("--degree", type=int, default=PipelineDefaults.DEGREE_BOUND,
                        help=f"Degree bound of the freeness check. Default: {PipelineDefaults.DEGREE_BOUND}.")
    center.set_defaults(handler=command_center)

    reduce = commands.add_parser("reduce", help="Reduce the action modulo a prime and re-validate.")
    reduce.add_argument("file")
    reduce.add_argument("--prime", type=int, required=True)
    reduce.set_defaults(handler=command_reduce)

    faithful = commands.add_parser("faithful", help="Inner-faithful radical and faithfulness certificate.")
    faithful.add_argument("file")
    faithful.add_argument("--degree", type=int, default=PipelineDefaults.DEGREE_BOUND)
    faithful.add_argument("--certificate-degree", type=int, default=PipelineDefaults.CERTIFICATE_MAX_DEGREE,
                          help="Monomial degree bound of the certificate search. "
                               f"Default: {PipelineDefaults.CERTIFICATE_MAX_DEGREE}.")
    faithful.set_defaults(handler=command_faithful)

    pipeline = commands.add_parser("pipeline", help="Run every stage and report a verdict.")
    pipeline.add_argument("file")
    pipeline.add_argument("--primes", type=int, default=PipelineDefaults.PRIME_COUNT)
    pipeline.add_argument("--q", type=int, default=None, help="Override q = dim(H/K)!.")
    pipeline.add_argument("--degree", type=int, default=PipelineDefaults.DEGREE_BOUND)
    pipeline.add_argument("--kmax", type=int, default=PipelineDefaults.K_MAX)
    pipeline.add_argument("--format", choices=("json", "text"), default="json")
    pipeline.add_argument("--output", default=None, help="Write the report to this path instead of stdout.")
    pipeline.set_defaults(handler=command_pipeline)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FileNotFoundError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValidationError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        for failure in e.failures:
            print(f"  - {failure}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ParseError, DenominatorVanishes) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except AlgebraError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
