# data_parser.py
"""
JSON codecs for action documents:

    {"hopf":   {"basis": [...], "unit": 0, "mult": [[i, j, k, "c"], ...],
                "comult": [[k, i, j, "c"], ...], "antipode": [[i, j, "c"], ...],
                "counit": ["c", ...]}
               or {"group_algebra": {"elements": [...], "product": [[...], ...]}},
     "tower":  {"coeff_field": "Q" | {"Fp": p}, "vars": [...],
                "derivations": {"x_i": {"x_j": "element"}}},
     "action": {"b_i": {"x_j": "element"}}}

Indices in the Hopf tables may be given as integers or basis names.
"""
import hashlib
import json

from action import build_action, validate_module_algebra
from config import PipelineDefaults, load_json_document
from errors import AlgebraError, ParseError, ValidationError
from hopf import build_hopf, group_algebra, validate_hopf_axioms
from ore import OreTower, validate_tower
from scalar import rational_domain, prime_field


def _require(document, key, path):
    if not isinstance(document, dict):
        raise ParseError(f"Expected an object at '{path}'.", path=path)
    if key not in document:
        raise ParseError(f"Missing required entry '{key}' at '{path}'.", path=f"{path}.{key}")
    return document[key]


def _scalar(domain, value, path):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"Scalar at '{path}' must be an integer or a string, got {value!r}.", path=path)
    try:
        return domain.scalar(value)
    except ParseError as e:
        raise ParseError(f"Cannot read scalar at '{path}': {e}", path=path)
    except (AlgebraError, ZeroDivisionError) as e:
        raise ParseError(f"Invalid scalar at '{path}': {e}", path=path)


def parse_field(spec, path="tower.coeff_field"):
    if spec == "Q":
        return rational_domain()
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        p = spec["Fp"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise ParseError(f"Prime at '{path}.Fp' must be an integer.", path=f"{path}.Fp")
        try:
            return prime_field(p)
        except AlgebraError as e:
            raise ParseError(str(e), path=f"{path}.Fp")
    raise ParseError(f"Coefficient field at '{path}' must be \"Q\" or {{\"Fp\": p}}, got {spec!r}.", path=path)


def encode_field(domain):
    return "Q" if domain.kind == "Rational" else {"Fp": domain.p}


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------

def _index(value, names, path):
    if isinstance(value, str) and value in names:
        return names.index(value)
    if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < len(names):
        return value
    raise ParseError(f"Entry at '{path}' is not a basis index or name: {value!r}.", path=path)


def _sparse_entries(document, key, names, arity, path):
    rows = _require(document, key, path)
    if not isinstance(rows, list):
        raise ParseError(f"'{path}.{key}' must be a list of entries.", path=f"{path}.{key}")
    entries = []
    for n, row in enumerate(rows):
        where = f"{path}.{key}[{n}]"
        if not isinstance(row, list) or len(row) != arity + 1:
            raise ParseError(f"Entry at '{where}' must list {arity} indices and a scalar.", path=where)
        entries.append(tuple(_index(v, names, f"{where}[{m}]") for m, v in enumerate(row[:arity])) + (row[arity],))
    return entries


def parse_hopf(document, domain, path="hopf"):
    if isinstance(document, dict) and "group_algebra" in document:
        spec = document["group_algebra"]
        elements = _require(spec, "elements", f"{path}.group_algebra")
        product = _require(spec, "product", f"{path}.group_algebra")
        if len(product) != len(elements) or any(len(row) != len(elements) for row in product):
            raise ParseError(f"Group table at '{path}.group_algebra.product' is not square.",
                             path=f"{path}.group_algebra.product")
        try:
            return group_algebra(domain, elements, product)
        except (AlgebraError, KeyError) as e:
            raise ParseError(f"Invalid group table at '{path}.group_algebra': {e}", path=f"{path}.group_algebra")

    names = _require(document, "basis", path)
    if not isinstance(names, list) or not names or len(set(names)) != len(names):
        raise ParseError(f"'{path}.basis' must be a non-empty list of distinct names.", path=f"{path}.basis")
    names = [str(n) for n in names]
    d = len(names)
    if "dim" in document and document["dim"] != d:
        raise ParseError(f"'{path}.dim' is {document['dim']} but the basis has {d} elements.", path=f"{path}.dim")

    mult = _sparse_entries(document, "mult", names, 3, path)
    comult = _sparse_entries(document, "comult", names, 3, path)
    antipode = _sparse_entries(document, "antipode", names, 2, path)
    for key, entries in (("comult", comult), ("antipode", antipode)):
        covered = {entry[0] for entry in entries}
        for k in range(d):
            if k not in covered:
                raise ParseError(f"'{path}.{key}' has no row for basis element '{names[k]}'.",
                                 path=f"{path}.{key}[{names[k]}]")

    counit = _require(document, "counit", path)
    if not isinstance(counit, list) or len(counit) != d:
        raise ParseError(f"'{path}.counit' must list {d} scalars.", path=f"{path}.counit")
    unit = _require(document, "unit", path)
    if isinstance(unit, list):
        if len(unit) != d:
            raise ParseError(f"'{path}.unit' vector must have {d} entries.", path=f"{path}.unit")
        unit = [_scalar(domain, v, f"{path}.unit[{n}]") for n, v in enumerate(unit)]
    else:
        unit = _index(unit, names, f"{path}.unit")

    def scalars(entries, key):
        return [entry[:-1] + (_scalar(domain, entry[-1], f"{path}.{key}[{n}]"),) for n, entry in enumerate(entries)]

    return build_hopf(
        domain, names, unit,
        mult=scalars(mult, "mult"),
        comult=scalars(comult, "comult"),
        antipode=scalars(antipode, "antipode"),
        counit=[_scalar(domain, v, f"{path}.counit[{n}]") for n, v in enumerate(counit)],
    )


def encode_hopf(H):
    D = H.domain
    d = H.dim
    text = D.format
    unit = H.unit_index
    return {
        "basis": list(H.basis_names),
        "unit": unit if unit is not None else [text(c) for c in H.unit],
        "mult": [[i, j, k, text(H.mult[i][j][k])] for i in range(d) for j in range(d) for k in range(d)
                 if not D.is_zero(H.mult[i][j][k])],
        "comult": [[k, i, j, text(H.comult[k][i][j])] for k in range(d) for i in range(d) for j in range(d)
                   if not D.is_zero(H.comult[k][i][j])],
        "antipode": [[i, j, text(H.antipode[i][j])] for i in range(d) for j in range(d)
                     if not D.is_zero(H.antipode[i][j])],
        "counit": [text(c) for c in H.counit],
    }


# ---------------------------------------------------------------------------
# Towers and actions
# ---------------------------------------------------------------------------

def parse_tower(document, path="tower", degree_bound=None):
    domain = parse_field(document.get("coeff_field", "Q") if isinstance(document, dict) else None,
                         f"{path}.coeff_field")
    var_names = _require(document, "vars", path)
    if not isinstance(var_names, list) or not var_names or not all(isinstance(v, str) for v in var_names):
        raise ParseError(f"'{path}.vars' must be a non-empty list of names.", path=f"{path}.vars")
    derivations = document.get("derivations", {})
    if not isinstance(derivations, dict) or not all(isinstance(v, dict) for v in derivations.values()):
        raise ParseError(f"'{path}.derivations' must map variables to {{variable: element}} objects.",
                         path=f"{path}.derivations")
    bound = degree_bound or document.get("degree_bound", PipelineDefaults.ORE_DEGREE_BOUND)
    try:
        return OreTower.build(domain, var_names, derivations, bound)
    except ParseError as e:
        raise ParseError(f"Cannot read '{path}.derivations': {e}", path=f"{path}.{e.path or 'derivations'}")
    except AlgebraError as e:
        raise ParseError(f"Invalid tower at '{path}': {e}", path=path)


def encode_tower(T):
    derivations = {}
    for i, row in enumerate(T.derivations):
        images = {T.vars[j]: str(T.derivation_image(i, j)) for j, image in enumerate(row) if image}
        if images:
            derivations[T.vars[i]] = images
    return {"coeff_field": encode_field(T.coeff_domain), "vars": list(T.vars), "derivations": derivations}


def parse_action(document, hopf, tower, path="action"):
    if not isinstance(document, dict):
        raise ParseError(f"'{path}' must map basis names to generator images.", path=path)
    images = {}
    for name in hopf.basis_names:
        row = _require(document, name, path)
        images[name] = {}
        for var in tower.vars:
            text = _require(row, var, f"{path}.{name}")
            try:
                images[name][var] = tower.parse(text)
            except (AlgebraError, ZeroDivisionError) as e:
                raise ParseError(f"Cannot read '{path}.{name}.{var}': {e}", path=f"{path}.{name}.{var}")
    stray = set(document) - set(hopf.basis_names)
    if stray:
        raise ParseError(f"'{path}' names unknown basis elements {sorted(stray)}.", path=path)
    return build_action(hopf, tower, images)


def encode_action(S):
    return {name: {var: str(S.image(i, j)) for j, var in enumerate(S.tower.vars)}
            for i, name in enumerate(S.hopf.basis_names)}


def validation_failures(S, degree_bound=None):
    """Prefixed failure identifiers of the three validators."""
    degree_bound = degree_bound or PipelineDefaults.VALIDATION_DEGREE
    failures = [f"hopf:{axiom}" for axiom in validate_hopf_axioms(S.hopf)]
    failures += [f"tower:{failure}" for failure in validate_tower(S.tower)]
    if not failures:
        failures += [f"module_algebra:{failure}" for failure in validate_module_algebra(S, degree_bound)]
    return failures


def parse_spec(document, validate=True, degree_bound=None):
    """ActionSpec from a parsed document; raises ParseError or ValidationError."""
    tower = parse_tower(_require(document, "tower", "$"))
    hopf = parse_hopf(_require(document, "hopf", "$"), tower.coeff_domain)
    spec = parse_action(_require(document, "action", "$"), hopf, tower)
    if validate:
        failures = validation_failures(spec, degree_bound)
        if failures:
            raise ValidationError(f"Action document fails validation: {', '.join(failures)}.", failures=failures)
    return spec


def encode_spec(S):
    return {"hopf": encode_hopf(S.hopf), "tower": encode_tower(S.tower), "action": encode_action(S)}


def load_spec(path, validate=True):
    return parse_spec(load_json_document(path), validate=validate)


def document_digest(document):
    """sha256 of the canonical (sorted keys, compact) JSON text of a document."""
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
