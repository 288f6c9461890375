# expression_utils.py
"""
Shared string syntax for polynomial-like values.

Text such as "3/2*x^2*y - y + 1" is tokenized with a regular expression and
evaluated by a small recursive-descent parser against an *algebra* object.
The algebra decides what the values are; it must provide:

    from_rational(Fraction) -> value
    generator(name)         -> value   (raise KeyError for unknown names)
    add(a, b), mul(a, b), neg(a), power(a, n)
    div(a, b)                          (may raise for unsupported divisors)

Scalar domains and Ore towers are both algebras, so products written out of
normal order are evaluated with the tower's own multiplication.
"""
import re
from fractions import Fraction

from errors import ParseError, AlgebraError

_TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if not match:
            raise ParseError(f"Unexpected character '{text[position]}' at offset {position} in '{text}'.")
        number, name, operator = match.groups()
        if number is not None:
            tokens.append(("number", number))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if operator == "**" else operator))
        position = match.end()
    return tokens


class _ExpressionParser:
    def __init__(self, text, algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.index = 0

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else (None, None)

    def _take(self):
        token = self._peek()
        self.index += 1
        return token

    def _expect(self, op):
        kind, value = self._take()
        if kind != "op" or value != op:
            raise ParseError(f"Expected '{op}' in '{self.text}'.")

    def parse(self):
        if not self.tokens:
            raise ParseError("Empty expression.")
        value = self._sum()
        if self.index != len(self.tokens):
            raise ParseError(f"Unexpected token '{self._peek()[1]}' in '{self.text}'.")
        return value

    def _sum(self):
        kind, value = self._peek()
        negate = False
        if kind == "op" and value in "+-":
            self._take()
            negate = value == "-"
        result = self._product()
        if negate:
            result = self.algebra.neg(result)
        while True:
            kind, value = self._peek()
            if kind != "op" or value not in "+-":
                return result
            self._take()
            term = self._product()
            result = self.algebra.add(result, self.algebra.neg(term) if value == "-" else term)

    def _product(self):
        result = self._power()
        while True:
            kind, value = self._peek()
            if kind != "op" or value not in "*/":
                return result
            self._take()
            factor = self._power()
            if value == "*":
                result = self.algebra.mul(result, factor)
            else:
                try:
                    result = self.algebra.div(result, factor)
                except (ZeroDivisionError, AlgebraError) as e:
                    raise ParseError(f"Cannot divide in '{self.text}': {e}")
        return result

    def _power(self):
        base = self._atom()
        kind, value = self._peek()
        if kind == "op" and value == "^":
            self._take()
            kind, exponent = self._take()
            if kind != "number":
                raise ParseError(f"Exponents must be non-negative integers in '{self.text}'.")
            return self.algebra.power(base, int(exponent))
        return base

    def _atom(self):
        kind, value = self._take()
        if kind == "number":
            return self.algebra.from_rational(Fraction(int(value)))
        if kind == "name":
            try:
                return self.algebra.generator(value)
            except KeyError:
                raise ParseError(f"Unknown variable '{value}' in '{self.text}'.")
        if kind == "op" and value == "(":
            inner = self._sum()
            self._expect(")")
            return inner
        raise ParseError(f"Unexpected end of expression '{self.text}'." if kind is None
                         else f"Unexpected token '{value}' in '{self.text}'.")


def parse_expression(text, algebra):
    """Evaluates `text` in `algebra`; raises ParseError on malformed input."""
    if not isinstance(text, str):
        raise ParseError(f"Expected an expression string, got {type(text).__name__}.")
    return _ExpressionParser(text, algebra).parse()


def grlex_key(exponents):
    return (sum(exponents), tuple(exponents))


def format_monomial(exponents, var_names):
    factors = []
    for name, e in zip(var_names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_terms(terms, var_names, signed_text):
    """
    Renders (exponents, coefficient) pairs, already ordered, as
    "c*v1^e1*...*vn^en + ...". `signed_text(c)` returns (is_negative, text of |c|).
    """
    if not terms:
        return "0"
    pieces = []
    for position, (exponents, coefficient) in enumerate(terms):
        negative, text = signed_text(coefficient)
        monomial = format_monomial(exponents, var_names)
        if monomial and text == "1":
            body = monomial
        elif monomial:
            body = f"{text}*{monomial}"
        else:
            body = text
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
