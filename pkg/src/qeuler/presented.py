"""Algebras presented by generator columns plus defining expressions.

The file format is a JSON object::

    {
      "name": ...,
      "complex_dimension": int,
      "chern_number": int,
      "unit": label, "point": label,
      "basis": [{"label": str, "codim": int}, ...],
      "generators": [label, ...],
      "generator_products": {"g|b": [{"coeff": int|"p/q", "q": int, "label": str}, ...]},
      "definitions": [{"label": str, "expr": str}, ...]
    }

Every non-generator, non-unit label must be defined exactly once, and each
defining expression may reference only generators, q, scalars, and labels
defined earlier.  Completion then computes the product of every basis pair
by rewriting the right factor through its definition, and hands the result
to the Frobenius validator; a validation failure is reported as
``InconsistentTable`` and means the data file itself is wrong.

Expression grammar (labels are the partition strings of the data file,
wrapped as ``s[...]`` so that ``s[2,1]`` is unambiguous next to rationals)::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | rational | "q" ("^" int)? | "s[" label "]" | "(" expr ")"
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import (
    CyclicDefinition,
    InconsistentTable,
    MissingDefinition,
    ParseError,
    UnknownLabel,
)
from .frobenius import FrobeniusAlgebra, Grading, QuantumElement
from .scalar import RationalFunction


# -- expression AST ----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class QPower:
    exponent: int


@dataclass(frozen=True)
class Ref:
    label: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object


def expression_labels(expr) -> set:
    if isinstance(expr, Ref):
        return {expr.label}
    if isinstance(expr, Neg):
        return expression_labels(expr.arg)
    if isinstance(expr, BinOp):
        return expression_labels(expr.left) | expression_labels(expr.right)
    return set()


# -- expression parsing --------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<label>s\[(?P<inner>[^\]]*)\])"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<q>q(?:\^(?P<exp>-?\d+))?)"
    r"|(?P<op>[-+*()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", column=col)
        if m.lastgroup is None and not m.group().strip():
            pos = m.end()
            continue
        col = m.start() + len(m.group()) - len(m.group().lstrip()) + 1
        if m.group("label"):
            tokens.append(("label", m.group("inner"), col))
        elif m.group("number"):
            tokens.append(("number", Fraction(m.group("number")), col))
        elif m.group("q"):
            exp = m.group("exp")
            tokens.append(("q", int(exp) if exp is not None else 1, col))
        else:
            tokens.append((m.group("op"), None, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        expr = self.expr()
        kind, _, col = self.peek()
        if kind != "end":
            raise ParseError("trailing input after expression", column=col)
        return expr

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, _ = self.next()
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.next()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        kind, value, col = self.next()
        if kind == "-":
            return Neg(self.factor())
        if kind == "number":
            return Num(value)
        if kind == "q":
            return QPower(value)
        if kind == "label":
            return Ref(value)
        if kind == "(":
            node = self.expr()
            kind2, _, col2 = self.next()
            if kind2 != ")":
                raise ParseError("expected ')'", column=col2)
            return node
        raise ParseError(f"unexpected token {kind!r}", column=col)


def parse_expression(text: str):
    return _ExprParser(text).parse()


# -- algebra spec ---------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    complex_dimension: int
    chern_number: int
    unit_label: str
    point_label: str
    basis: tuple  # of (label, codim)
    generators: tuple
    generator_products: dict  # (generator, label) -> QuantumElement
    definitions: tuple  # of (label, expression AST)


def _coeff_from_json(c) -> Fraction:
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise ParseError(f"bad coefficient {c!r}")


def parse_spec(text: str) -> AlgebraSpec:
    """Parse and validate a presented-algebra file."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from None
    for field in ("name", "complex_dimension", "chern_number", "unit",
                  "point", "basis", "generators", "generator_products",
                  "definitions"):
        if field not in raw:
            raise ParseError(f"missing field {field!r}")

    basis = []
    for entry in raw["basis"]:
        basis.append((entry["label"], int(entry["codim"])))
    labels = [l for l, _ in basis]
    label_set = set(labels)
    if len(label_set) != len(labels):
        raise ParseError("duplicate basis label")
    codim = dict(basis)

    unit = raw["unit"]
    point = raw["point"]
    for l in (unit, point):
        if l not in label_set:
            raise UnknownLabel(f"label {l!r} not in the basis")
    if codim[point] != raw["complex_dimension"]:
        raise ParseError(
            f"point class {point!r} has codimension {codim[point]}, "
            f"expected {raw['complex_dimension']}")

    generators = tuple(raw["generators"])
    for g in generators:
        if g not in label_set:
            raise UnknownLabel(f"generator {g!r} not in the basis")

    products = {}
    for key, terms in raw["generator_products"].items():
        g, _, b = key.partition("|")
        if g not in generators:
            raise ParseError(f"key {key!r} does not start with a generator")
        if b not in label_set:
            raise UnknownLabel(f"label {b!r} in key {key!r} not in the basis")
        coeffs = {}
        for term in terms:
            if term["label"] not in label_set:
                raise UnknownLabel(
                    f"label {term['label']!r} in product {key!r} not in the basis")
            c = RationalFunction.monomial(
                _coeff_from_json(term.get("coeff", 1)), int(term.get("q", 0)))
            coeffs[term["label"]] = coeffs.get(term["label"], 0 * c) + c
        products[(g, b)] = QuantumElement(coeffs)
    for g in generators:
        for b in labels:
            if (g, b) not in products:
                raise MissingDefinition(f"no generator product for {g!r} * {b!r}")

    defined = []
    seen = set()
    available = set(generators) | {unit}
    for entry in raw["definitions"]:
        label, text_expr = entry["label"], entry["expr"]
        if label not in label_set:
            raise UnknownLabel(f"defined label {label!r} not in the basis")
        if label in seen or label in available:
            raise ParseError(f"label {label!r} defined more than once")
        try:
            expr = parse_expression(text_expr)
        except ParseError as exc:
            raise ParseError(
                f"in definition of {label!r}: {exc.args[0]}") from None
        for ref in expression_labels(expr):
            if ref not in label_set:
                raise UnknownLabel(
                    f"definition of {label!r} references unknown label {ref!r}")
            if ref not in available:
                raise CyclicDefinition(
                    f"definition of {label!r} references {ref!r}, "
                    "which is not defined yet")
        defined.append((label, expr))
        seen.add(label)
        available.add(label)

    for l in labels:
        if l not in available:
            raise MissingDefinition(f"basis label {l!r} has no definition")

    return AlgebraSpec(
        name=raw["name"],
        complex_dimension=int(raw["complex_dimension"]),
        chern_number=int(raw["chern_number"]),
        unit_label=unit,
        point_label=point,
        basis=tuple(basis),
        generators=generators,
        generator_products=products,
        definitions=tuple(defined),
    )


# -- completion ------------------------------------------------------------------

def complete_table(spec: AlgebraSpec, validate: bool = True) -> FrobeniusAlgebra:
    """Expand the generator columns into the full multiplication table.

    Column by column: the unit column is trivial, generator columns come
    from the file, and each defined column is evaluated by applying the
    defining expression to every basis element, using only columns that
    are already complete.
    """
    labels = [l for l, _ in spec.basis]
    columns = {spec.unit_label: {b: QuantumElement.basis(b) for b in labels}}
    for g in spec.generators:
        columns[g] = {b: spec.generator_products[(g, b)] for b in labels}

    def times_column(x: QuantumElement, column_label: str) -> QuantumElement:
        col = columns[column_label]
        total = QuantumElement()
        for b, c in x.items():
            total = total + col[b].scale(c)
        return total

    def apply(x: QuantumElement, expr) -> QuantumElement:
        if isinstance(expr, Num):
            return x.scale(expr.value)
        if isinstance(expr, QPower):
            return x.scale(RationalFunction.monomial(1, expr.exponent))
        if isinstance(expr, Ref):
            return times_column(x, expr.label)
        if isinstance(expr, Neg):
            return -apply(x, expr.arg)
        if isinstance(expr, BinOp):
            if expr.op == "+":
                return apply(x, expr.left) + apply(x, expr.right)
            if expr.op == "-":
                return apply(x, expr.left) - apply(x, expr.right)
            return apply(apply(x, expr.left), expr.right)
        raise TypeError(f"unknown expression node {expr!r}")

    for label, expr in spec.definitions:
        columns[label] = {
            b: apply(QuantumElement.basis(b), expr) for b in labels
        }

    table = {}
    for u in labels:
        for v in labels:
            table[(u, v)] = columns[v][u]
    codim = dict(spec.basis)
    functional = {l: (1 if l == spec.point_label else 0) for l in labels}
    grading = Grading(
        real_degree={l: 2 * (spec.complex_dimension - codim[l]) for l in labels},
        chern_number=spec.chern_number,
    )
    algebra = FrobeniusAlgebra(labels, table, spec.unit_label, functional,
                               grading=grading, name=spec.name)
    if validate:
        violations = algebra.validate()
        if violations:
            shown = "; ".join(violations[:5])
            more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
            raise InconsistentTable(
                f"completed table for {spec.name!r} is not a Frobenius algebra: "
                f"{shown}{more}")
    return algebra


def load_algebra(path) -> FrobeniusAlgebra:
    with open(path, encoding="utf-8") as fh:
        return complete_table(parse_spec(fh.read()))


def zero_divisor_check(algebra: FrobeniusAlgebra, x: QuantumElement,
                       y: QuantumElement) -> bool:
    """True iff x and y are both nonzero but their product is zero."""
    if x.is_zero() or y.is_zero():
        return False
    return algebra.multiply(x, y).is_zero()


def bundled_ig26_path():
    """Path to the shipped isotropic-Grassmannian IG(2,6) table."""
    return resources.files("qeuler").joinpath("data/ig26.json")
