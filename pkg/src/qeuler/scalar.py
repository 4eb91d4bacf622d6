"""Exact arithmetic in the field Q(q) of rational functions in one variable.

A scalar is a ratio of sparse polynomials in ``q`` with ``Fraction``
coefficients.  Values are immutable and kept in a unique canonical form
(numerator and denominator coprime, denominator monic), so ``==`` is value
equality and instances are safe to share between threads.

>>> parse_scalar("(q^2 - 1)/(q - 1)")
RationalFunction('q + 1')
>>> parse_scalar("1/(16*q^2)") * parse_scalar("16*q^2")
RationalFunction('1')
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, ParseError


def _coeff(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


class QPolynomial:
    """Sparse polynomial in q: finitely supported map exponent -> Fraction.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.  Exponents are nonnegative integers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        tidy = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, c in items:
                if exp < 0:
                    raise ValueError("polynomial exponents must be >= 0")
                c = _coeff(c) + tidy.get(exp, Fraction(0))
                if c:
                    tidy[exp] = c
                elif exp in tidy:
                    del tidy[exp]
        object.__setattr__(self, "terms", tidy)

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @classmethod
    def constant(cls, c):
        c = _coeff(c)
        return cls({0: c} if c else {})

    @classmethod
    def monomial(cls, c, exp):
        c = _coeff(c)
        return cls({exp: c} if c else {})

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max(self.terms) if self.terms else -1

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms)] if self.terms else Fraction(0)

    def monic(self) -> "QPolynomial":
        """Scale so the leading coefficient is 1; zero stays zero."""
        if not self.terms:
            return self
        lead = self.leading_coefficient()
        if lead == 1:
            return self
        return QPolynomial({e: c / lead for e, c in self.terms.items()})

    def evaluate(self, point: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * point**e
        return total

    def __add__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return QPolynomial(out)

    def __sub__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return QPolynomial({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if not c:
                return QPolynomial()
            return QPolynomial({e: k * c for e, k in self.terms.items()})
        if not isinstance(other, QPolynomial):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use RationalFunction for negative powers")
        result = QPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Exact polynomial long division: self = q*other + r, deg r < deg other."""
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quot = {}
        rem = dict(self.terms)
        dlead = other.degree()
        clead = other.leading_coefficient()
        while rem and max(rem) >= dlead:
            e = max(rem)
            factor = rem[e] / clead
            quot[e - dlead] = factor
            for e2, c2 in other.terms.items():
                t = e - dlead + e2
                s = rem.get(t, Fraction(0)) - factor * c2
                if s:
                    rem[t] = s
                elif t in rem:
                    del rem[t]
        return QPolynomial(quot), QPolynomial(rem)

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"QPolynomial('{render_poly(self)}')"


def poly_gcd(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0.

    >>> poly_gcd(QPolynomial({2: 1, 0: -1}), QPolynomial({1: 1, 0: -1}))
    QPolynomial('q - 1')
    """
    while not b.is_zero():
        _, r = divmod(a, b)
        a, b = b, r
    return a.monic()


_P_ZERO = QPolynomial()
_P_ONE = QPolynomial.constant(1)


class RationalFunction:
    """Element of Q(q) in canonical form: coprime parts, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = QPolynomial.constant(num)
        if den is None:
            den = _P_ONE
        elif isinstance(den, (int, Fraction)):
            den = QPolynomial.constant(den)
        if den.is_zero():
            raise DivisionByZero("denominator is the zero polynomial")
        if num.is_zero():
            num, den = _P_ZERO, _P_ONE
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, _ = divmod(num, g)
                den, _ = divmod(den, g)
            lead = den.leading_coefficient()
            if lead != 1:
                num = num * (1 / lead)
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def monomial(cls, c, exp: int):
        """c * q**exp, with exp allowed to be negative."""
        if exp >= 0:
            return cls(QPolynomial.monomial(c, exp))
        return cls(QPolynomial.constant(c), QPolynomial.monomial(1, -exp))

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == _P_ONE

    def evaluate(self, point: Fraction) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise DivisionByZero(f"pole at q = {point}")
        return self.num.evaluate(point) / d

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(other)
        if isinstance(other, QPolynomial):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"RationalFunction('{render_scalar(self)}')"


ZERO = RationalFunction(0)
ONE = RationalFunction(1)
Q = RationalFunction(QPolynomial.monomial(1, 1))


def field_arithmetic(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Dispatch one of the four field operations by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_term(c: Fraction, exp: int) -> str:
    if exp == 0:
        return str(c)
    qpart = "q" if exp == 1 else f"q^{exp}"
    if c == 1:
        return qpart
    if c == -1:
        return "-" + qpart
    return f"{c}*{qpart}"


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def render_poly(p: QPolynomial, shift: int = 0) -> str:
    """Render with exponents descending; ``shift`` offsets every exponent."""
    if p.is_zero():
        return "0"
    parts = [_render_term(p.terms[e], e + shift) for e in sorted(p.terms, reverse=True)]
    return _join_terms(parts)


def render_scalar(x: RationalFunction) -> str:
    """Canonical text form.

    Polynomials render plainly, monomial denominators render as negative
    powers of q (``3/16*q^-2``), anything else as ``(num)/(den)``.
    """
    if x.den == _P_ONE:
        return render_poly(x.num)
    if len(x.den.terms) == 1:
        (exp,) = x.den.terms
        return render_poly(x.num, shift=-exp)
    return f"({render_poly(x.num)})/({render_poly(x.den)})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Scanner:
    """Single-line tokenizer for the scalar grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, column=self.pos + 1)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])


def _parse_expr(s: _Scanner) -> RationalFunction:
    value = _parse_term(s)
    while s.peek() in ("+", "-"):
        op = s.peek()
        s.pos += 1
        rhs = _parse_term(s)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(s: _Scanner) -> RationalFunction:
    value = _parse_factor(s)
    while s.peek() in ("*", "/"):
        op = s.peek()
        s.pos += 1
        rhs = _parse_factor(s)
        value = value * rhs if op == "*" else value / rhs
    return value


def _parse_factor(s: _Scanner) -> RationalFunction:
    ch = s.peek()
    if ch == "-":
        s.pos += 1
        return -_parse_factor(s)
    if ch == "(":
        s.pos += 1
        value = _parse_expr(s)
        if s.peek() != ")":
            s.error("expected ')'")
        s.pos += 1
        return value
    if ch == "q":
        s.pos += 1
        if s.peek() == "^":
            s.pos += 1
            return RationalFunction.monomial(1, s.take_int())
        return Q
    if ch.isdigit():
        return RationalFunction(s.take_int())
    s.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")


def parse_scalar(text: str) -> RationalFunction:
    """Parse the scalar grammar: integers, fractions p/q, powers q^k,
    and sums, differences, products, quotients thereof.

    >>> parse_scalar("3/16*q^-2")
    RationalFunction('3/16*q^-2')
    """
    s = _Scanner(text)
    value = _parse_expr(s)
    if s.peek():
        s.error("trailing input")
    return value
