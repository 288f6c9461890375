# report_generator.py
import os
import json
from dataclasses import asdict

from tabulate import tabulate

from config import FilePaths
from expression_utils import format_monomial
from pipeline import ReductionReport, PrimeRecord, Verdict


def report_to_dict(report):
    return asdict(report)


def report_from_json(text):
    """Parses an emitted JSON report back into a ReductionReport."""
    data = json.loads(text)
    data["primes"] = [PrimeRecord(**record) for record in data.get("primes", [])]
    data["verdict"] = Verdict(**data["verdict"]) if data.get("verdict") else None
    return ReductionReport(**data)


def _flag(value):
    if value is None:
        return "-"
    return "yes" if value else "NO"


def _prime_rows(report):
    rows = []
    for record in report.primes:
        rank = f"{record.rank['p']}^{record.rank['s']}" if record.rank else "-"
        validators = all(record.validators.values()) if record.validators else None
        rows.append([
            record.prime,
            _flag(validators),
            _flag(record.semisimple),
            _flag(record.cosemisimple),
            _flag(record.certificate_nonzero),
            rank,
            _flag(record.coprime),
            _flag(record.cocommutative),
            "-" if record.grouplike_count is None else record.grouplike_count,
            record.error or "",
        ])
    return rows


def _text_report(report):
    lines = [f"Input digest: {report.input_digest}",
             f"dim H = {report.hopf_dim}, radical dimension = {report.radical_dim}, "
             f"quotient dimension = {report.quotient_dim}, q = {report.q}"]
    if report.structure_ring:
        lines.append(f"Structure constant ring: Z[1/{report.structure_ring['N']}] "
                     f"({report.structure_ring['generator_count']} generators)")
    if report.certificate:
        lines.append(f"Certificate: tensor power {report.certificate['tensor_power']}, "
                     f"determinant {report.certificate['determinant']}")
    lines.append("")
    if report.primes:
        headers = ["p", "validators", "semisimple", "cosemisimple", "certificate", "rank",
                   "coprime", "cocommutative", "grouplikes", "error"]
        lines.append(tabulate(_prime_rows(report), headers=headers, tablefmt="pipe"))
    else:
        lines.append("No primes examined.")
    if report.lift:
        lines.append("")
        lines.append(f"Cocommutative over Q: {_flag(report.lift['cocommutative'])}")
    lines.append("")
    lines.append(report.verdict.describe() if report.verdict else "Verdict: none.")
    return "\n".join(lines) + "\n"


def emit_report(report, output_format="json"):
    """Deterministic JSON (sorted keys, no timestamps) or a text table plus verdict line."""
    if output_format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    if output_format == "text":
        return _text_report(report)
    raise ValueError(f"Unknown report format '{output_format}'. Expected 'json' or 'text'.")


def write_report(report, output_path=None, output_format="json"):
    if output_path is None:
        output_path = os.path.join(FilePaths.REPORT_OUTPUT_DIR, FilePaths.DEFAULT_REPORT_FILE)
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(emit_report(report, output_format))
    return output_path


# ---------------------------------------------------------------------------
# Fragments for the single-stage subcommands
# ---------------------------------------------------------------------------

def encode_central_subring(C):
    return {
        "centrals": [str(c) for c in C.centrals],
        "exponents": list(C.exponents),
        "rank": {"p": C.p, "s": C.s},
        "levels": [asdict(contribution) for contribution in C.contributions],
        "p_polynomials": [None if g is None else str(g) for g in C.p_polynomials],
    }


def _monomial_text(exponents, names):
    return format_monomial(exponents, names) or "1"


def encode_certificate(S, certificate):
    names = S.tower.vars
    return {
        "tensor_power": certificate.tensor_power,
        "vectors": [[_monomial_text(e, names) for e in tensor] for tensor in certificate.vectors],
        "functionals": [[k, [_monomial_text(e, names) for e in coordinate]]
                        for k, coordinate in certificate.functionals],
        "weight": str(certificate.weight),
        "matrix": certificate.matrix.to_strings(),
        "determinant": str(certificate.determinant),
    }


def central_subring_table(C):
    rows = [[c.level, c.variable, c.kind, c.twisted, c.k, c.degree] for c in C.contributions]
    return tabulate(rows, headers=["level", "variable", "kind", "twisted", "k", "degree"], tablefmt="pipe")
