# scalar.py
"""
Exact scalar domains and dense linear algebra.

Four kinds of domain are supported: the rationals, prime fields F_p,
multivariate polynomial rings over either of those, and fraction fields of
such polynomial rings. Domain objects operate on *payloads* (the canonical
representation); `Scalar` wraps a payload together with its domain and adds
operator overloading for callers that are not performance sensitive.

Payloads:
    RationalField   fractions.Fraction
    PrimeField      int in [0, p)
    PolynomialRing  sympy PolyElement in a grlex-ordered sparse ring
    FractionField   (numerator, denominator) PolyElement pair, coprime,
                    denominator monic
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime
from sympy.polys.domains import QQ, GF
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from errors import DomainMismatch, NotAField, NotSquare, DenominatorVanishes, AlgebraError
from expression_utils import parse_expression, format_terms


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

class ScalarDomain:
    """Common interface of every scalar domain. Subclasses are frozen dataclasses."""

    kind = None
    is_field = True

    def coefficient_domain(self):
        return self

    # Arithmetic on payloads; subclasses override what differs.
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def exquo(self, a, b):
        return self.div(a, b)

    def power(self, a, n):
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def from_rational(self, value):
        return self.from_fraction(Fraction(value))

    def generator(self, name):
        raise KeyError(name)

    def normalize(self, payload):
        return payload

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return self.from_int(text)
        if isinstance(text, Fraction):
            return self.from_fraction(text)
        return parse_expression(str(text), self)

    def scalar(self, value):
        """Builds a Scalar from an int, Fraction, string or Scalar."""
        if isinstance(value, Scalar):
            if value.domain != self:
                raise DomainMismatch(f"Scalar in {value.domain} used where {self} was expected.")
            return value
        return Scalar(self, self.parse(value))


@dataclass(frozen=True)
class RationalField(ScalarDomain):
    kind = "Rational"

    @property
    def characteristic(self):
        return 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("Inverse of zero in Q.")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def signed_text(self, a):
        return a < 0, str(abs(a))

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))

    def to_sympy(self, a):
        return QQ(a.numerator, a.denominator)

    def from_sympy(self, c):
        return Fraction(int(c.numerator), int(c.denominator))

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(ScalarDomain):
    p: int = 2
    kind = "PrimeField"

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise AlgebraError(f"Prime field modulus {self.p} is not prime.")

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DenominatorVanishes(f"Denominator of {q} vanishes modulo {self.p}.")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"Inverse of zero in F_{self.p}.")
        return pow(a, -1, self.p)

    def power(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, a):
        return str(a)

    def signed_text(self, a):
        return False, str(a)

    def random(self, rng):
        return rng.randrange(self.p)

    def to_sympy(self, a):
        return a

    def from_sympy(self, c):
        return int(c) % self.p

    def __str__(self):
        return f"F_{self.p}"


@functools.lru_cache(maxsize=None)
def _sympy_ring(var_names, coefficient_domain):
    ground = QQ if coefficient_domain.kind == "Rational" else GF(coefficient_domain.p)
    return ring(list(var_names), ground, grlex)[0]


@dataclass(frozen=True)
class PolynomialRing(ScalarDomain):
    base: ScalarDomain = RationalField()
    vars: tuple = ()
    kind = "Poly"
    is_field = False

    def __post_init__(self):
        if self.base.kind not in ("Rational", "PrimeField"):
            raise AlgebraError(f"Polynomial rings must be over Q or a prime field, not {self.base}.")
        if not self.vars:
            raise AlgebraError("A polynomial ring needs at least one variable.")
        if len(set(self.vars)) != len(self.vars):
            raise AlgebraError(f"Duplicate variable names in {list(self.vars)}.")

    @property
    def sympy_ring(self):
        return _sympy_ring(tuple(self.vars), self.base)

    @property
    def characteristic(self):
        return self.base.characteristic

    def coefficient_domain(self):
        return self.base

    @property
    def zero(self):
        return self.sympy_ring.zero

    @property
    def one(self):
        return self.sympy_ring.one

    def from_int(self, n):
        return self.constant(self.base.from_int(n))

    def from_fraction(self, q):
        return self.constant(self.base.from_fraction(q))

    def constant(self, c):
        return self.sympy_ring.ground_new(self.base.to_sympy(c))

    def from_terms(self, terms):
        """Builds a polynomial from a mapping exponent tuple -> base payload."""
        R = self.sympy_ring
        return R.from_dict({tuple(e): self.base.to_sympy(c) for e, c in terms.items()
                            if not self.base.is_zero(c)})

    def terms(self, a):
        """(exponents, base payload) pairs in descending grlex order."""
        return [(monom, self.base.from_sympy(c)) for monom, c in a.terms()]

    def generator(self, name):
        if name not in self.vars:
            raise KeyError(name)
        exponents = tuple(1 if v == name else 0 for v in self.vars)
        return self.sympy_ring.term_new(exponents, self.base.to_sympy(self.base.one))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def power(self, a, n):
        if n < 0:
            raise NotAField(f"Negative power of a polynomial in {self}.")
        return a ** n

    def inv(self, a):
        if a.is_ground and a:
            return self.constant(self.base.inv(self.base.from_sympy(a.LC)))
        raise NotAField(f"{self.format(a)} is not invertible in {self}.")

    def exquo(self, a, b):
        if not b:
            raise ZeroDivisionError(f"Division by zero in {self}.")
        return a.exquo(b)

    def is_zero(self, a):
        return not a

    def is_constant(self, a):
        return a.is_ground

    def constant_value(self, a):
        """Base payload of a constant polynomial."""
        if not a.is_ground:
            raise AlgebraError(f"{self.format(a)} is not a constant.")
        return self.base.from_sympy(a.LC) if a else self.base.zero

    def evaluate_coefficients(self, a, mapping):
        """Applies `mapping` (base payload -> base payload) to every coefficient."""
        return self.from_terms({e: mapping(c) for e, c in self.terms(a)})

    def format(self, a):
        return format_terms(self.terms(a), self.vars, self.base.signed_text)

    def signed_text(self, a):
        text = self.format(a)
        return False, text if len(a) <= 1 else f"({text})"

    def random(self, rng, max_terms=3, max_degree=2):
        terms = {}
        for _ in range(rng.randint(0, max_terms)):
            exponents = tuple(rng.randint(0, max_degree) for _ in self.vars)
            terms[exponents] = self.base.random(rng)
        return self.from_terms(terms)

    def fraction_field(self):
        return FractionField(self)

    def __str__(self):
        return f"{self.base}[{','.join(self.vars)}]"


@dataclass(frozen=True)
class FractionField(ScalarDomain):
    of: PolynomialRing = None
    kind = "Fraction"

    def __post_init__(self):
        if not isinstance(self.of, PolynomialRing):
            raise AlgebraError("Fraction fields are only built over polynomial rings.")

    @property
    def vars(self):
        return self.of.vars

    @property
    def characteristic(self):
        return self.of.characteristic

    def coefficient_domain(self):
        return self.of.base

    def normalize(self, payload):
        numerator, denominator = payload
        if not denominator:
            raise ZeroDivisionError(f"Zero denominator in {self}.")
        if not numerator:
            return self.of.zero, self.of.one
        numerator, denominator = numerator.cancel(denominator)
        leading = denominator.LC
        return numerator.quo_ground(leading), denominator.monic()

    @property
    def zero(self):
        return self.of.zero, self.of.one

    @property
    def one(self):
        return self.of.one, self.of.one

    def from_int(self, n):
        return self.of.from_int(n), self.of.one

    def from_fraction(self, q):
        return self.of.from_fraction(q), self.of.one

    def from_poly(self, a):
        return a, self.of.one

    def generator(self, name):
        return self.of.generator(name), self.of.one

    def add(self, a, b):
        return self.normalize((a[0] * b[1] + b[0] * a[1], a[1] * b[1]))

    def sub(self, a, b):
        return self.normalize((a[0] * b[1] - b[0] * a[1], a[1] * b[1]))

    def neg(self, a):
        return -a[0], a[1]

    def mul(self, a, b):
        return self.normalize((a[0] * b[0], a[1] * b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"Inverse of zero in {self}.")
        return self.normalize((a[1], a[0]))

    def is_zero(self, a):
        return not a[0]

    def is_polynomial(self, a):
        return a[1] == self.of.one

    def numerator(self, a):
        return a[0]

    def denominator(self, a):
        return a[1]

    def format(self, a):
        numerator = self.of.format(a[0])
        if self.is_polynomial(a):
            return numerator
        return f"({numerator})/({self.of.format(a[1])})"

    def signed_text(self, a):
        return False, f"({self.format(a)})"

    def random(self, rng):
        denominator = self.of.zero
        while not denominator:
            denominator = self.of.random(rng)
        return self.normalize((self.of.random(rng), denominator))

    def __str__(self):
        return f"Frac({self.of})"


def rational_domain():
    return RationalField()


def prime_field(p):
    return PrimeField(p)


def poly_domain(base, var_names):
    return PolynomialRing(base, tuple(var_names))


def fraction_domain(poly):
    return FractionField(poly)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

class Scalar:
    """An immutable element of a ScalarDomain."""

    __slots__ = ("domain", "payload")

    def __init__(self, domain, payload):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "payload", domain.normalize(payload))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar values are immutable.")

    @classmethod
    def parse(cls, domain, text):
        return cls(domain, domain.parse(text))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainMismatch(f"Cannot combine elements of {self.domain} and {other.domain}.")
            return other.payload
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.domain.from_fraction(Fraction(other))
        return NotImplemented

    def _binary(self, other, operation, reflected=False):
        payload = self._coerce(other)
        if payload is NotImplemented:
            return NotImplemented
        a, b = (payload, self.payload) if reflected else (self.payload, payload)
        return Scalar(self.domain, operation(a, b))

    def __add__(self, other):
        return self._binary(other, self.domain.add)

    def __radd__(self, other):
        return self._binary(other, self.domain.add, reflected=True)

    def __sub__(self, other):
        return self._binary(other, self.domain.sub)

    def __rsub__(self, other):
        return self._binary(other, self.domain.sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, self.domain.mul)

    def __rmul__(self, other):
        return self._binary(other, self.domain.mul, reflected=True)

    def __truediv__(self, other):
        return self._binary(other, self.domain.div)

    def __rtruediv__(self, other):
        return self._binary(other, self.domain.div, reflected=True)

    def __neg__(self):
        return Scalar(self.domain, self.domain.neg(self.payload))

    def __pow__(self, n):
        return Scalar(self.domain, self.domain.power(self.payload, n))

    def inverse(self):
        return Scalar(self.domain, self.domain.inv(self.payload))

    def is_zero(self):
        return self.domain.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.domain == other.domain and self.payload == other.payload
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.payload == self.domain.from_fraction(Fraction(other))
            except DenominatorVanishes:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.payload))

    def __str__(self):
        return self.domain.format(self.payload)

    def __repr__(self):
        return f"Scalar({self.domain}, {self})"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense immutable matrix whose entries are payloads of one domain."""

    __slots__ = ("domain", "rows", "cols", "entries")

    def __init__(self, domain, rows, cols, entries):
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise AlgebraError(f"Matrix entries do not match the shape {rows}x{cols}.")
        self.domain = domain
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_values(cls, domain, values):
        """Builds a matrix from nested lists of ints, Fractions, strings or Scalars."""
        rows = [[domain.scalar(v).payload for v in row] for row in values]
        cols = len(rows[0]) if rows else 0
        return cls(domain, len(rows), cols, rows)

    @classmethod
    def column(cls, domain, values):
        return cls.from_values(domain, [[v] for v in values])

    @classmethod
    def from_payload_columns(cls, domain, columns, rows):
        return cls(domain, rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, domain, rows, cols):
        return cls(domain, rows, cols, [[domain.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, domain, n):
        return cls(domain, n, n, [[domain.one if i == j else domain.zero for j in range(n)]
                                  for i in range(n)])

    def __getitem__(self, index):
        i, j = index
        return Scalar(self.domain, self.entries[i][j])

    def payload(self, i, j):
        return self.entries[i][j]

    def column_payloads(self, j=0):
        return [row[j] for row in self.entries]

    def to_strings(self):
        return [[self.domain.format(x) for x in row] for row in self.entries]

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"Expected a Matrix, got {type(other).__name__}.")
        if other.domain != self.domain:
            raise DomainMismatch(f"Matrices over {self.domain} and {other.domain} cannot be combined.")

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.domain == other.domain
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.domain, self.entries))

    def __add__(self, other):
        self._check(other)
        D = self.domain
        return Matrix(D, self.rows, self.cols,
                      [[D.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        D = self.domain
        return Matrix(D, self.rows, self.cols,
                      [[D.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.scale(self.domain.neg(self.domain.one))

    def scale(self, c):
        D = self.domain
        c = c.payload if isinstance(c, Scalar) else c
        return Matrix(D, self.rows, self.cols, [[D.mul(c, a) for a in row] for row in self.entries])

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise AlgebraError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}.")
        D = self.domain
        columns = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            out_row = []
            for column in columns:
                total = D.zero
                for a, b in zip(row, column):
                    if not D.is_zero(a) and not D.is_zero(b):
                        total = D.add(total, D.mul(a, b))
                out_row.append(total)
            out.append(out_row)
        return Matrix(D, self.rows, other.cols, out)

    def power(self, n):
        if self.rows != self.cols:
            raise NotSquare(f"Cannot raise a {self.rows}x{self.cols} matrix to a power.")
        result = Matrix.identity(self.domain, self.rows)
        base = self
        while n:
            if n & 1:
                result = result.matmul(base)
            base = base.matmul(base)
            n >>= 1
        return result

    def transpose(self):
        return Matrix(self.domain, self.cols, self.rows, [list(c) for c in zip(*self.entries)]
                      if self.rows else [[] for _ in range(self.cols)])

    def is_zero(self):
        return all(self.domain.is_zero(x) for row in self.entries for x in row)

    def flatten(self):
        return [x for row in self.entries for x in row]

    def map(self, function, domain):
        return Matrix(domain, self.rows, self.cols, [[function(x) for x in row] for row in self.entries])

    def __repr__(self):
        return f"Matrix({self.domain}, {self.to_strings()})"


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _require_field(domain):
    if not domain.is_field:
        raise NotAField(f"{domain} is not a field; convert to its fraction field first.")


def to_fraction_field(M):
    """Lifts a matrix over a polynomial ring to its fraction field."""
    if M.domain.kind != "Poly":
        return M
    F = M.domain.fraction_field()
    return M.map(F.from_poly, F)


def rref(M):
    """Reduced row echelon form over a field; returns (matrix, pivot columns)."""
    _require_field(M.domain)
    D = M.domain
    rows = [list(r) for r in M.entries]
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        pivot_row = next((i for i in range(r, M.rows) if not D.is_zero(rows[i][c])), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inverse = D.inv(rows[r][c])
        rows[r] = [D.mul(inverse, x) for x in rows[r]]
        for i in range(M.rows):
            if i != r and not D.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [D.sub(x, D.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(D, M.rows, M.cols, rows), tuple(pivots)


def rank(M):
    return len(rref(to_fraction_field(M))[1])


def _normalized_leading_one(D, vector):
    lead = next((x for x in vector if not D.is_zero(x)), None)
    if lead is None or lead == D.one:
        return vector
    inverse = D.inv(lead)
    return [D.mul(inverse, x) for x in vector]


def _kernel_from_rref(D, reduced, pivots, cols):
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        vector = [D.zero] * cols
        vector[free] = D.one
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = D.neg(reduced.entries[row_index][free])
        basis.append(_normalized_leading_one(D, vector))
    return basis


def nullspace(M):
    """Kernel basis as payload lists, each with first nonzero entry 1."""
    reduced, pivots = rref(M)
    return _kernel_from_rref(M.domain, reduced, pivots, M.cols)


def solve_linear(M, b):
    """
    Solves M x = b over a field.

    Returns None when the system is inconsistent, otherwise
    (particular solution, nullspace basis) as column matrices. Free
    variables are set to zero in the particular solution.
    """
    if M.domain != b.domain:
        raise DomainMismatch(f"Matrix over {M.domain} and right-hand side over {b.domain}.")
    _require_field(M.domain)
    if b.rows != M.rows or b.cols != 1:
        raise AlgebraError(f"Right-hand side must be a {M.rows}x1 column.")
    D = M.domain
    augmented = Matrix(D, M.rows, M.cols + 1, [list(r) + [b.entries[i][0]] for i, r in enumerate(M.entries)])
    reduced, pivots = rref(augmented)
    if M.cols in pivots:
        return None
    particular = [D.zero] * M.cols
    for row_index, pivot in enumerate(pivots):
        particular[pivot] = reduced.entries[row_index][M.cols]
    coefficient_part = Matrix(D, M.rows, M.cols, [row[:M.cols] for row in reduced.entries])
    kernel = _kernel_from_rref(D, coefficient_part, pivots, M.cols)
    as_column = lambda v: Matrix(D, M.cols, 1, [[x] for x in v])
    return as_column(particular), [as_column(v) for v in kernel]


def determinant(M):
    """Exact determinant: Gaussian elimination over fields, Bareiss over polynomial rings."""
    if M.rows != M.cols:
        raise NotSquare(f"Determinant of a non-square {M.rows}x{M.cols} matrix.")
    D = M.domain
    n = M.rows
    if n == 0:
        return Scalar(D, D.one)
    rows = [list(r) for r in M.entries]
    negate = False
    if D.is_field:
        result = D.one
        for k in range(n):
            pivot_row = next((i for i in range(k, n) if not D.is_zero(rows[i][k])), None)
            if pivot_row is None:
                return Scalar(D, D.zero)
            if pivot_row != k:
                rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
                negate = not negate
            pivot = rows[k][k]
            result = D.mul(result, pivot)
            inverse = D.inv(pivot)
            for i in range(k + 1, n):
                if D.is_zero(rows[i][k]):
                    continue
                factor = D.mul(rows[i][k], inverse)
                rows[i] = [D.sub(x, D.mul(factor, y)) for x, y in zip(rows[i], rows[k])]
    else:
        previous = D.one
        for k in range(n - 1):
            if D.is_zero(rows[k][k]):
                swap = next((i for i in range(k + 1, n) if not D.is_zero(rows[i][k])), None)
                if swap is None:
                    return Scalar(D, D.zero)
                rows[k], rows[swap] = rows[swap], rows[k]
                negate = not negate
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    cross = D.sub(D.mul(rows[i][j], rows[k][k]), D.mul(rows[i][k], rows[k][j]))
                    rows[i][j] = D.exquo(cross, previous)
            previous = rows[k][k]
        result = rows[n - 1][n - 1]
    return Scalar(D, D.neg(result) if negate else result)


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial in one variable with coefficients (low to high) in a scalar domain."""

    domain: ScalarDomain
    coefficients: tuple
    var: str = "z"

    @property
    def degree(self):
        D = self.domain
        for k in range(len(self.coefficients) - 1, -1, -1):
            if not D.is_zero(self.coefficients[k]):
                return k
        return -1

    def coefficient(self, k):
        value = self.coefficients[k] if k < len(self.coefficients) else self.domain.zero
        return Scalar(self.domain, value)

    def evaluate_matrix(self, M):
        """Horner evaluation at a square matrix."""
        result = Matrix.zeros(M.domain, M.rows, M.cols)
        identity = Matrix.identity(M.domain, M.rows)
        for c in reversed(self.coefficients):
            result = result.matmul(M) + identity.scale(c)
        return result

    def remainder_of_power(self, exponent):
        """z^exponent modulo this (monic) polynomial, as a low-to-high coefficient list."""
        D = self.domain
        n = self.degree
        if n <= 0 or self.coefficients[n] != D.one:
            raise AlgebraError("Remainders are only taken modulo monic polynomials of positive degree.")
        tail = self.coefficients[:n]

        def times_z(vector):
            shifted = [D.zero] + vector[:-1]
            top = vector[-1]
            if D.is_zero(top):
                return shifted
            return [D.sub(s, D.mul(top, c)) for s, c in zip(shifted, tail)]

        def multiply(u, v):
            product = [D.zero] * (2 * n - 1)
            for i, a in enumerate(u):
                if D.is_zero(a):
                    continue
                for j, b in enumerate(v):
                    if not D.is_zero(b):
                        product[i + j] = D.add(product[i + j], D.mul(a, b))
            result = [D.zero] * n
            for k in range(len(product) - 1, -1, -1):
                result = times_z(result)
                result[0] = D.add(result[0], product[k])
            return result

        result = [D.one] + [D.zero] * (n - 1)
        base = times_z([D.one] + [D.zero] * (n - 1)) if n > 1 else [D.neg(tail[0])]
        while exponent:
            if exponent & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            exponent >>= 1
        return result

    def __str__(self):
        terms = [(k, c) for k, c in enumerate(self.coefficients) if not self.domain.is_zero(c)]
        if not terms:
            return "0"
        pieces = []
        for k, c in reversed(terms):
            negative, text = self.domain.signed_text(c)
            monomial = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            body = monomial if monomial and text == "1" else (f"{text}*{monomial}" if monomial else text)
            sign = "-" if negative else "+"
            pieces.append(f"{'-' if negative else ''}{body}" if not pieces else f" {sign} {body}")
        return "".join(pieces)


def _berkowitz_vector(D, M):
    n = len(M)
    if n == 0:
        return [D.one]
    if n == 1:
        return [D.one, D.neg(M[0][0])]
    a = M[0][0]
    R = M[0][1:]
    C = [row[0] for row in M[1:]]
    A = [row[1:] for row in M[1:]]

    def times(matrix, vector):
        out = []
        for row in matrix:
            total = D.zero
            for x, y in zip(row, vector):
                total = D.add(total, D.mul(x, y))
            out.append(total)
        return out

    columns = [C]
    for i in range(n - 2):
        columns.append(times(A, columns[i]))
    diagonals = [D.one, D.neg(a)] + [D.neg(times([R], c)[0]) for c in columns]
    inner = _berkowitz_vector(D, A)
    # Toeplitz (n+1) x n matrix times the inner vector
    out = []
    for i in range(n + 1):
        total = D.zero
        for j in range(min(i + 1, n)):
            total = D.add(total, D.mul(diagonals[i - j], inner[j]))
        out.append(total)
    return out


def char_poly(M, var="z"):
    """det(z*I - M), computed division free so it works over polynomial rings."""
    if M.rows != M.cols:
        raise NotSquare(f"Characteristic polynomial of a non-square {M.rows}x{M.cols} matrix.")
    high_to_low = _berkowitz_vector(M.domain, [list(r) for r in M.entries])
    return UnivariatePoly(M.domain, tuple(reversed(high_to_low)), var)
