# config.py
import os
import json
from dotenv import load_dotenv

from errors import ParseError

load_dotenv()


def _int_setting(name, default):
    raw_value = os.getenv(f"HOPF_REDUCTION_{name}")
    if raw_value is None or not raw_value.strip():
        return default
    try:
        return int(raw_value)
    except ValueError:
        raise ValueError(f"Setting HOPF_REDUCTION_{name}='{raw_value}' is not an integer.")


class PipelineDefaults:
    # Number of good primes examined per pipeline run
    PRIME_COUNT = _int_setting("PRIME_COUNT", 5)
    # Monomial degree bound for annihilators, module-algebra checks and freeness checks
    DEGREE_BOUND = _int_setting("DEGREE_BOUND", 6)
    # Largest Frobenius exponent tried in the p-polynomial search
    K_MAX = _int_setting("K_MAX", 4)
    CERTIFICATE_MAX_DEGREE = _int_setting("CERTIFICATE_MAX_DEGREE", 8)
    # Safety valve for runaway Ore products (total degree)
    ORE_DEGREE_BOUND = _int_setting("ORE_DEGREE_BOUND", 24)
    VALIDATION_DEGREE = _int_setting("VALIDATION_DEGREE", 3)
    GROUPLIKE_ENUMERATION_LIMIT = _int_setting("GROUPLIKE_ENUMERATION_LIMIT", 10 ** 6)
    SUBDIRECT_SITE_COUNT = _int_setting("SUBDIRECT_SITE_COUNT", 25)
    # Characteristic-polynomial cross-check only runs up to this operator rank
    CROSS_CHECK_MAX_RANK = _int_setting("CROSS_CHECK_MAX_RANK", 9)
    RANDOM_SEED = _int_setting("RANDOM_SEED", 20240601)


class FilePaths:
    CORPUS_DIR = "corpus"
    REPORT_OUTPUT_DIR = "reports"
    DEFAULT_REPORT_FILE = "pipeline_report.json"


def corpus_path(file_name):
    """Absolute path of a corpus document shipped next to this module."""
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), FilePaths.CORPUS_DIR, file_name)


def load_json_document(json_file_path):
    """
    Reads a UTF-8 JSON document, refusing duplicate keys anywhere in it.
    """
    if not os.path.exists(json_file_path):
        raise FileNotFoundError(f"Input JSON file not found at: {json_file_path}")

    def _raise_on_duplicate_keys(ordered_pairs):
        d = {}
        for k, v in ordered_pairs:
            if k in d:
                raise ParseError(f"Duplicate key '{k}' found in '{json_file_path}'.", path=str(k))
            d[k] = v
        return d

    try:
        with open(json_file_path, 'r', encoding='utf-8') as f:
            return json.load(f, object_pairs_hook=_raise_on_duplicate_keys)
    except json.JSONDecodeError as e:
        raise ParseError(f"Error decoding JSON document '{json_file_path}': {e.msg} (line {e.lineno})",
                         path=f"line {e.lineno}")
