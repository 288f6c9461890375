# hopf.py
"""
Finite-dimensional Hopf algebras given by structure constants.

With basis b_0..b_{d-1}:
    b_i * b_j   = sum_k mult[i][j][k] b_k
    Delta(b_k)  = sum_{i,j} comult[k][i][j] b_i (x) b_j
    S(b_i)      = sum_j antipode[i][j] b_j
    eps(b_i)    = counit[i]
    1_H         = sum_i unit[i] b_i

All table entries are payloads of `domain` (a field). Elements of H are
coefficient vectors (tuples of payloads).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from errors import DomainMismatch, EnumerationTooLarge, NotAHopfIdeal, AlgebraError
from scalar import Matrix, rref, nullspace

AXIOM_IDS = (
    "associativity", "left_unit", "right_unit",
    "coassociativity", "left_counit", "right_counit",
    "comult_multiplicative", "comult_unital",
    "counit_multiplicative", "counit_unital",
    "antipode_left", "antipode_right",
)


@dataclass(frozen=True)
class HopfData:
    domain: object
    basis_names: tuple
    unit: tuple
    mult: tuple
    comult: tuple
    antipode: tuple
    counit: tuple

    def __post_init__(self):
        d = len(self.basis_names)
        if d == 0:
            raise AlgebraError("A Hopf algebra needs a non-empty basis.")
        shapes_ok = (
            len(self.unit) == d and len(self.counit) == d
            and len(self.mult) == d and all(len(r) == d and all(len(c) == d for c in r) for r in self.mult)
            and len(self.comult) == d and all(len(r) == d and all(len(c) == d for c in r) for r in self.comult)
            and len(self.antipode) == d and all(len(r) == d for r in self.antipode)
        )
        if not shapes_ok:
            raise AlgebraError(f"Structure constant tables are not consistent with dimension {d}.")

    @property
    def dim(self):
        return len(self.basis_names)

    @property
    def unit_index(self):
        """Index of the basis vector equal to 1_H, or None when 1_H is not a basis vector."""
        D = self.domain
        nonzero = [i for i, c in enumerate(self.unit) if not D.is_zero(c)]
        if len(nonzero) == 1 and self.unit[nonzero[0]] == D.one:
            return nonzero[0]
        return None

    # Sparse views of the tables
    @cached_property
    def mult_terms(self):
        D = self.domain
        return [[[(k, c) for k, c in enumerate(self.mult[i][j]) if not D.is_zero(c)]
                 for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def comult_terms(self):
        D = self.domain
        return [[(i, j, self.comult[k][i][j]) for i in range(self.dim) for j in range(self.dim)
                 if not D.is_zero(self.comult[k][i][j])] for k in range(self.dim)]

    def basis_vector(self, i):
        D = self.domain
        return tuple(D.one if k == i else D.zero for k in range(self.dim))

    def zero_vector(self):
        return (self.domain.zero,) * self.dim

    def map_scalars(self, function, domain):
        """Applies `function` to every table entry, producing tables over `domain`."""
        return HopfData(
            domain=domain,
            basis_names=self.basis_names,
            unit=tuple(function(c) for c in self.unit),
            mult=tuple(tuple(tuple(function(c) for c in col) for col in row) for row in self.mult),
            comult=tuple(tuple(tuple(function(c) for c in col) for col in row) for row in self.comult),
            antipode=tuple(tuple(function(c) for c in row) for row in self.antipode),
            counit=tuple(function(c) for c in self.counit),
        )

    def format_vector(self, vector):
        D = self.domain
        pieces = []
        for name, c in zip(self.basis_names, vector):
            if D.is_zero(c):
                continue
            negative, text = D.signed_text(c)
            body = name if text == "1" else f"{text}*{name}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces) or "0"


def build_hopf(domain, basis_names, unit, mult, comult, antipode, counit):
    """
    Builds HopfData from sparse entries. `mult` holds (i, j, k, value),
    `comult` holds (k, i, j, value), `antipode` holds (i, j, value); `unit` is
    an index or a full vector; `counit` is a full vector. Values may be
    ints, Fractions, strings or Scalars of `domain`.
    """
    d = len(basis_names)
    value = lambda v: domain.scalar(v).payload
    mult_table = [[[domain.zero] * d for _ in range(d)] for _ in range(d)]
    comult_table = [[[domain.zero] * d for _ in range(d)] for _ in range(d)]
    antipode_table = [[domain.zero] * d for _ in range(d)]
    for i, j, k, v in mult:
        mult_table[i][j][k] = domain.add(mult_table[i][j][k], value(v))
    for k, i, j, v in comult:
        comult_table[k][i][j] = domain.add(comult_table[k][i][j], value(v))
    for i, j, v in antipode:
        antipode_table[i][j] = domain.add(antipode_table[i][j], value(v))
    if isinstance(unit, int):
        unit_vector = tuple(domain.one if k == unit else domain.zero for k in range(d))
    else:
        unit_vector = tuple(value(v) for v in unit)
    return HopfData(
        domain=domain,
        basis_names=tuple(basis_names),
        unit=unit_vector,
        mult=tuple(tuple(tuple(c) for c in row) for row in mult_table),
        comult=tuple(tuple(tuple(c) for c in row) for row in comult_table),
        antipode=tuple(tuple(row) for row in antipode_table),
        counit=tuple(value(v) for v in counit),
    )


def group_algebra(domain, elements, product):
    """
    Group algebra on the named elements; `product[a][b]` is the index (or
    name) of elements[a]*elements[b]. The identity is detected from the table.
    """
    names = list(elements)
    index_of = {name: i for i, name in enumerate(names)}
    n = len(names)
    table = [[product[a][b] if isinstance(product[a][b], int) else index_of[product[a][b]]
              for b in range(n)] for a in range(n)]
    identity = next((e for e in range(n) if all(table[e][b] == b and table[b][e] == b for b in range(n))), None)
    if identity is None:
        raise AlgebraError("Group table has no identity element.")
    inverse = [next((b for b in range(n) if table[a][b] == identity), None) for a in range(n)]
    if None in inverse:
        raise AlgebraError("Group table has an element without inverse.")
    return build_hopf(
        domain, names, identity,
        mult=[(a, b, table[a][b], 1) for a in range(n) for b in range(n)],
        comult=[(a, a, a, 1) for a in range(n)],
        antipode=[(a, inverse[a], 1) for a in range(n)],
        counit=[1] * n,
    )


def cyclic_group_algebra(domain, n, generator="g"):
    names = ["1"] + [generator if k == 1 else f"{generator}^{k}" for k in range(1, n)]
    return group_algebra(domain, names, [[(a + b) % n for b in range(n)] for a in range(n)])


# ---------------------------------------------------------------------------
# Element arithmetic
# ---------------------------------------------------------------------------

def multiply_vectors(H, u, v):
    D = H.domain
    out = list(H.zero_vector())
    terms = H.mult_terms
    for i, a in enumerate(u):
        if D.is_zero(a):
            continue
        for j, b in enumerate(v):
            if D.is_zero(b):
                continue
            ab = D.mul(a, b)
            for k, c in terms[i][j]:
                out[k] = D.add(out[k], D.mul(ab, c))
    return tuple(out)


def coproduct(H, v):
    """Delta(v) as a sparse dict {(i, j): coefficient}."""
    D = H.domain
    out = {}
    for k, a in enumerate(v):
        if D.is_zero(a):
            continue
        for i, j, c in H.comult_terms[k]:
            out[(i, j)] = D.add(out.get((i, j), D.zero), D.mul(a, c))
    return {key: c for key, c in out.items() if not D.is_zero(c)}


def apply_antipode(H, v):
    D = H.domain
    out = list(H.zero_vector())
    for i, a in enumerate(v):
        if D.is_zero(a):
            continue
        for j, c in enumerate(H.antipode[i]):
            out[j] = D.add(out[j], D.mul(a, c))
    return tuple(out)


def counit_value(H, v):
    D = H.domain
    total = D.zero
    for a, e in zip(v, H.counit):
        total = D.add(total, D.mul(a, e))
    return total


def _tensor_product(H, u, v):
    D = H.domain
    return {(i, j): D.mul(a, b) for i, a in enumerate(u) if not D.is_zero(a)
            for j, b in enumerate(v) if not D.is_zero(b)}


def _sparse_equal(D, x, y):
    for key in set(x) | set(y):
        if x.get(key, D.zero) != y.get(key, D.zero):
            return False
    return True


def _sparse_add(D, target, key, value):
    if not D.is_zero(value):
        target[key] = D.add(target.get(key, D.zero), value)


def _check_payload_domain(H):
    D = H.domain
    expected = {"Rational": Fraction, "PrimeField": int}.get(D.kind)
    if expected is None:
        raise DomainMismatch(f"Hopf algebras are defined over Q or a prime field, not {D}.")
    entries = itertools.chain(
        H.unit, H.counit, itertools.chain.from_iterable(H.antipode),
        (c for row in H.mult for col in row for c in col),
        (c for row in H.comult for col in row for c in col),
    )
    for c in entries:
        if not isinstance(c, expected) or isinstance(c, bool):
            raise DomainMismatch(f"Table entry {c!r} does not belong to {D}.")
        if D.kind == "PrimeField" and not 0 <= c < D.p:
            raise DomainMismatch(f"Table entry {c} is not a canonical residue modulo {D.p}.")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def validate_hopf_axioms(H):
    """Returns the identifiers of failed axioms; empty iff H is a Hopf algebra."""
    _check_payload_domain(H)
    D = H.domain
    d = H.dim
    basis = [H.basis_vector(i) for i in range(d)]
    failures = []

    def record(axiom, ok):
        if not ok and axiom not in failures:
            failures.append(axiom)

    products = [[multiply_vectors(H, basis[i], basis[j]) for j in range(d)] for i in range(d)]
    for i, j, k in itertools.product(range(d), repeat=3):
        left = multiply_vectors(H, products[i][j], basis[k])
        right = multiply_vectors(H, basis[i], products[j][k])
        record("associativity", left == right)
        if "associativity" in failures:
            break
    for j in range(d):
        record("left_unit", multiply_vectors(H, H.unit, basis[j]) == basis[j])
        record("right_unit", multiply_vectors(H, basis[j], H.unit) == basis[j])

    for k in range(d):
        delta = coproduct(H, basis[k])
        left, right = {}, {}
        for (i, j), c in delta.items():
            for (a, b), e in coproduct(H, basis[i]).items():
                _sparse_add(D, left, (a, b, j), D.mul(c, e))
            for (a, b), e in coproduct(H, basis[j]).items():
                _sparse_add(D, right, (i, a, b), D.mul(c, e))
        record("coassociativity", _sparse_equal(D, left, right))

        left_counit, right_counit = list(H.zero_vector()), list(H.zero_vector())
        for (i, j), c in delta.items():
            left_counit[j] = D.add(left_counit[j], D.mul(H.counit[i], c))
            right_counit[i] = D.add(right_counit[i], D.mul(H.counit[j], c))
        record("left_counit", tuple(left_counit) == basis[k])
        record("right_counit", tuple(right_counit) == basis[k])

        left_antipode, right_antipode = list(H.zero_vector()), list(H.zero_vector())
        for (i, j), c in delta.items():
            s_left = multiply_vectors(H, apply_antipode(H, basis[i]), basis[j])
            s_right = multiply_vectors(H, basis[i], apply_antipode(H, basis[j]))
            for m in range(d):
                left_antipode[m] = D.add(left_antipode[m], D.mul(c, s_left[m]))
                right_antipode[m] = D.add(right_antipode[m], D.mul(c, s_right[m]))
        expected = tuple(D.mul(H.counit[k], u) for u in H.unit)
        record("antipode_left", tuple(left_antipode) == expected)
        record("antipode_right", tuple(right_antipode) == expected)

    deltas = [coproduct(H, basis[k]) for k in range(d)]
    for i, j in itertools.product(range(d), repeat=2):
        left = coproduct(H, products[i][j])
        right = {}
        for (a1, b1), c1 in deltas[i].items():
            for (a2, b2), c2 in deltas[j].items():
                c = D.mul(c1, c2)
                first = products[a1][a2]
                second = products[b1][b2]
                for a, x in enumerate(first):
                    if D.is_zero(x):
                        continue
                    for b, y in enumerate(second):
                        _sparse_add(D, right, (a, b), D.mul(c, D.mul(x, y)))
        record("comult_multiplicative", _sparse_equal(D, left, right))
        record("counit_multiplicative",
               counit_value(H, products[i][j]) == D.mul(H.counit[i], H.counit[j]))

    record("comult_unital", _sparse_equal(D, coproduct(H, H.unit), _tensor_product(H, H.unit, H.unit)))
    record("counit_unital", counit_value(H, H.unit) == D.one)
    return [axiom for axiom in AXIOM_IDS if axiom in failures]


@dataclass(frozen=True)
class IntegralResult:
    space_basis: tuple
    normalized: tuple | None
    semisimple: bool


def find_left_integral(H):
    """Solves b_i t = eps(b_i) t for all i; semisimple iff some integral has eps(t) != 0."""
    D = H.domain
    d = H.dim
    rows = []
    for i in range(d):
        for k in range(d):
            row = []
            for m in range(d):
                entry = H.mult[i][m][k]
                if m == k:
                    entry = D.sub(entry, H.counit[i])
                row.append(entry)
            rows.append(row)
    space = [tuple(v) for v in nullspace(Matrix(D, d * d, d, rows))]
    normalized = None
    for v in space:
        value = counit_value(H, v)
        if not D.is_zero(value):
            inverse = D.inv(value)
            normalized = tuple(D.mul(inverse, c) for c in v)
            break
    return IntegralResult(space_basis=tuple(space), normalized=normalized, semisimple=normalized is not None)


def _dual_name(name):
    return name[:-1] if name.endswith("*") else f"{name}*"


def dual_hopf(H):
    d = H.dim
    return HopfData(
        domain=H.domain,
        basis_names=tuple(_dual_name(n) for n in H.basis_names),
        unit=H.counit,
        mult=tuple(tuple(tuple(H.comult[k][i][j] for k in range(d)) for j in range(d)) for i in range(d)),
        comult=tuple(tuple(tuple(H.mult[i][j][k] for j in range(d)) for i in range(d)) for k in range(d)),
        antipode=tuple(tuple(H.antipode[j][i] for j in range(d)) for i in range(d)),
        counit=H.unit,
    )


def cosemisimple_integral(H):
    """Left integral of the dual; cosemisimple iff its normalized form exists."""
    return find_left_integral(dual_hopf(H))


def is_cocommutative(H):
    d = H.dim
    return all(H.comult[k][i][j] == H.comult[k][j][i]
               for k in range(d) for i in range(d) for j in range(i + 1, d))


def is_commutative(H):
    d = H.dim
    return all(H.mult[i][j] == H.mult[j][i] for i in range(d) for j in range(i + 1, d))


def is_grouplike(H, vector):
    D = H.domain
    if all(D.is_zero(c) for c in vector):
        return False
    if counit_value(H, vector) != D.one:
        return False
    return _sparse_equal(D, coproduct(H, vector), _tensor_product(H, vector, vector))


def grouplike_elements(H, candidates=None, limit=10 ** 6):
    """
    Grouplike elements of H. Over a prime field with p^d <= limit they are
    found by enumerating every vector with eps(x) = 1; otherwise only the
    supplied candidates are verified.
    """
    D = H.domain
    if candidates is not None:
        return [tuple(v) for v in candidates if is_grouplike(H, tuple(v))]
    if D.kind != "PrimeField" or D.p ** H.dim > limit:
        raise EnumerationTooLarge(
            f"Cannot enumerate grouplikes of a {H.dim}-dimensional Hopf algebra over {D} "
            f"(limit {limit}); supply candidates instead.")
    pivot = next((i for i, e in enumerate(H.counit) if not D.is_zero(e)), None)
    if pivot is None:
        return []
    pivot_inverse = D.inv(H.counit[pivot])
    others = [i for i in range(H.dim) if i != pivot]
    found = []
    for values in itertools.product(range(D.p), repeat=len(others)):
        vector = [D.zero] * H.dim
        rest = D.zero
        for i, c in zip(others, values):
            vector[i] = c
            rest = D.add(rest, D.mul(c, H.counit[i]))
        vector[pivot] = D.mul(pivot_inverse, D.sub(D.one, rest))
        vector = tuple(vector)
        if is_grouplike(H, vector):
            found.append(vector)
    return found


# ---------------------------------------------------------------------------
# Hopf ideals and quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HopfIdealData:
    generators: tuple
    basis: tuple
    pivots: tuple
    is_two_sided_ideal: bool
    is_coideal: bool
    is_antipode_stable: bool

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def failed_flags(self):
        flags = {"is_two_sided_ideal": self.is_two_sided_ideal, "is_coideal": self.is_coideal,
                 "is_antipode_stable": self.is_antipode_stable}
        return [name for name, ok in flags.items() if not ok]


def _echelon_basis(D, d, vectors):
    if not vectors:
        return (), ()
    reduced, pivots = rref(Matrix(D, len(vectors), d, vectors))
    return tuple(reduced.entries[:len(pivots)]), pivots


def project_to_quotient(D, basis, pivots, vector):
    """Reduces `vector` modulo the echelon basis; the result vanishes on pivot columns."""
    out = list(vector)
    for row, pivot in zip(basis, pivots):
        c = out[pivot]
        if not D.is_zero(c):
            out = [D.sub(x, D.mul(c, y)) for x, y in zip(out, row)]
    return tuple(out)


def _in_span(D, basis, pivots, vector):
    return all(D.is_zero(c) for c in project_to_quotient(D, basis, pivots, vector))


def hopf_ideal_from_generators(H, generators):
    """
    Saturates the span of `generators` under two-sided multiplication and the
    antipode, then verifies the ideal, coideal and antipode-stability flags.
    """
    D = H.domain
    d = H.dim
    basis_vectors = [H.basis_vector(i) for i in range(d)]
    basis, pivots = _echelon_basis(D, d, [tuple(v) for v in generators])
    while True:
        candidates = list(basis)
        for v in basis:
            candidates.append(apply_antipode(H, v))
            for b in basis_vectors:
                candidates.append(multiply_vectors(H, b, v))
                candidates.append(multiply_vectors(H, v, b))
        new_basis, new_pivots = _echelon_basis(D, d, candidates)
        if len(new_basis) == len(basis):
            break
        basis, pivots = new_basis, new_pivots

    two_sided = all(_in_span(D, basis, pivots, multiply_vectors(H, b, v))
                    and _in_span(D, basis, pivots, multiply_vectors(H, v, b))
                    for v in basis for b in basis_vectors)
    antipode_stable = all(_in_span(D, basis, pivots, apply_antipode(H, v)) for v in basis)
    images = [project_to_quotient(D, basis, pivots, b) for b in basis_vectors]
    coideal = all(D.is_zero(counit_value(H, v)) for v in basis)
    for v in basis:
        if not coideal:
            break
        projected = {}
        for (i, j), c in coproduct(H, v).items():
            for a, x in enumerate(images[i]):
                if D.is_zero(x):
                    continue
                for b, y in enumerate(images[j]):
                    _sparse_add(D, projected, (a, b), D.mul(c, D.mul(x, y)))
        coideal = not any(not D.is_zero(c) for c in projected.values())
    return HopfIdealData(
        generators=tuple(tuple(v) for v in generators),
        basis=basis,
        pivots=tuple(pivots),
        is_two_sided_ideal=two_sided,
        is_coideal=coideal,
        is_antipode_stable=antipode_stable,
    )


def quotient_complement(H, ideal):
    """Indices of the basis vectors whose images form a basis of H/I."""
    return tuple(i for i in range(H.dim) if i not in ideal.pivots)


def quotient_coordinates(H, ideal, vector):
    """Coordinates of the image of `vector` in H/I on the complement basis."""
    projected = project_to_quotient(H.domain, ideal.basis, ideal.pivots, vector)
    return tuple(projected[i] for i in quotient_complement(H, ideal))


def quotient_by_hopf_ideal(H, ideal):
    if ideal.failed_flags:
        raise NotAHopfIdeal(f"Cannot form the quotient: failed checks {ideal.failed_flags}.",
                            failed_flags=ideal.failed_flags)
    D = H.domain
    complement = quotient_complement(H, ideal)
    r = len(complement)
    position = {index: a for a, index in enumerate(complement)}
    coordinates = lambda v: quotient_coordinates(H, ideal, v)
    images = [project_to_quotient(D, ideal.basis, ideal.pivots, H.basis_vector(i)) for i in range(H.dim)]

    mult = tuple(tuple(coordinates(multiply_vectors(H, H.basis_vector(a), H.basis_vector(b)))
                       for b in complement) for a in complement)
    comult = []
    for k in complement:
        table = [[D.zero] * r for _ in range(r)]
        for (i, j), c in coproduct(H, H.basis_vector(k)).items():
            for a in complement:
                x = images[i][a]
                if D.is_zero(x):
                    continue
                for b in complement:
                    y = images[j][b]
                    if not D.is_zero(y):
                        table[position[a]][position[b]] = D.add(table[position[a]][position[b]],
                                                                D.mul(c, D.mul(x, y)))
        comult.append(tuple(tuple(row) for row in table))
    return HopfData(
        domain=D,
        basis_names=tuple(H.basis_names[i] for i in complement),
        unit=coordinates(H.unit),
        mult=mult,
        comult=tuple(comult),
        antipode=tuple(coordinates(apply_antipode(H, H.basis_vector(a))) for a in complement),
        counit=tuple(H.counit[a] for a in complement),
    )
