# test_data_parser.py
import json

import pytest

from config import corpus_path, load_json_document
from data_parser import parse_spec, encode_spec, parse_field, parse_hopf, document_digest, validation_failures
from errors import ParseError, ValidationError

VALID_DOCUMENTS = [
    "weyl_c2.json",
    "trivial_c2_polynomial.json",
    "klein_weyl_first_factor.json",
    "jordan_c2.json",
    "heisenberg_c2.json",
    "s3_permutation.json",
]

C2_TOWER = {"coeff_field": "Q", "vars": ["x"]}


@pytest.mark.parametrize("file_name", VALID_DOCUMENTS)
def test_corpus_documents_validate(corpus_spec, file_name):
    S = corpus_spec(file_name)
    assert validation_failures(S) == []


def test_bad_sign_document_fails_validation(corpus_spec):
    with pytest.raises(ValidationError) as excinfo:
        corpus_spec("weyl_c2_bad_sign.json")
    assert "module_algebra:tower_relation" in excinfo.value.failures


def test_encoded_spec_parses_back_to_the_same_action(corpus_spec):
    S = corpus_spec("heisenberg_c2.json")
    assert parse_spec(encode_spec(S)) == S


def test_explicit_tables_with_scalar_strings(Q):
    H = parse_hopf({
        "basis": ["1", "g"], "unit": "1",
        "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], ["g", "g", "1", "1"]],
        "comult": [[0, 0, 0, 1], [1, 1, 1, 1]],
        "antipode": [[0, 0, "1"], [1, 1, "2/2"]],
        "counit": [1, "1"],
    }, Q)
    assert H.dim == 2
    assert H.unit_index == 0


def test_missing_comultiplication_row_names_its_path(Q):
    document = {
        "basis": ["1", "g"], "unit": 0,
        "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
        "comult": [[0, 0, 0, 1]],
        "antipode": [[0, 0, 1], [1, 1, 1]],
        "counit": [1, 1],
    }
    with pytest.raises(ParseError) as excinfo:
        parse_hopf(document, Q)
    assert excinfo.value.path == "hopf.comult[g]"


def test_bad_scalar_names_its_path(Q):
    document = {"basis": ["1"], "unit": 0, "mult": [[0, 0, 0, 1]], "comult": [[0, 0, 0, 1]],
                "antipode": [[0, 0, 1]], "counit": [[1]]}
    with pytest.raises(ParseError) as excinfo:
        parse_hopf(document, Q)
    assert excinfo.value.path == "hopf.counit[0]"


def test_field_must_be_q_or_a_prime():
    assert parse_field({"Fp": 7}).p == 7
    with pytest.raises(ParseError) as excinfo:
        parse_field({"Fp": 4})
    assert excinfo.value.path == "tower.coeff_field.Fp"
    with pytest.raises(ParseError):
        parse_field("R")


def test_action_must_cover_every_basis_element():
    document = {
        "hopf": {"group_algebra": {"elements": ["1", "g"], "product": [["1", "g"], ["g", "1"]]}},
        "tower": C2_TOWER,
        "action": {"1": {"x": "x"}},
    }
    with pytest.raises(ParseError) as excinfo:
        parse_spec(document)
    assert excinfo.value.path == "action.g"


def test_unparsable_image_names_its_path():
    document = {
        "hopf": {"group_algebra": {"elements": ["1", "g"], "product": [["1", "g"], ["g", "1"]]}},
        "tower": C2_TOWER,
        "action": {"1": {"x": "x"}, "g": {"x": "x +* 1"}},
    }
    with pytest.raises(ParseError) as excinfo:
        parse_spec(document)
    assert excinfo.value.path == "action.g.x"


def test_duplicate_keys_are_rejected(tmp_path):
    path = tmp_path / "duplicate.json"
    path.write_text('{"hopf": {}, "hopf": {}}', encoding="utf-8")
    with pytest.raises(ParseError):
        load_json_document(str(path))


def test_missing_file_is_reported():
    with pytest.raises(FileNotFoundError):
        load_json_document(corpus_path("no_such_document.json"))


def test_digest_ignores_key_order():
    first = json.loads('{"a": 1, "b": [1, 2]}')
    second = json.loads('{"b": [1, 2], "a": 1}')
    assert document_digest(first) == document_digest(second)
    assert document_digest(first) != document_digest({"a": 2, "b": [1, 2]})
