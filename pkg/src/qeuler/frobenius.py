"""Finite-dimensional commutative Frobenius algebras over Q(q).

An algebra is given by an ordered basis of string labels, structure
constants for basis products, a unit element, and the values of a linear
functional on the basis.  The induced pairing eta(x, y) = f(x * y) must be
nondegenerate.  On top of that this module computes dual bases, the Euler
class sum(e_i * e_i^dual), unit and nilpotency tests for elements, the
semisimplicity / field-factor diagnosis, direct sums, and an exhaustive
axiom validator.

Instances are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegeneratePairing, NotAUnit, UnknownLabel
from .scalar import ONE, ZERO, RationalFunction, render_scalar


def _as_scalar(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, (int, Fraction)):
        return RationalFunction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class QuantumElement:
    """Finitely supported map from basis labels to nonzero Q(q) scalars.

    Supports addition, subtraction, negation, and scalar multiplication.
    Products live on the owning algebra, which knows the structure
    constants.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        tidy = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for label, c in items:
                c = _as_scalar(c) + tidy.get(label, ZERO)
                if c:
                    tidy[label] = c
                elif label in tidy:
                    del tidy[label]
        object.__setattr__(self, "coeffs", tidy)

    def __setattr__(self, name, value):
        raise AttributeError("QuantumElement is immutable")

    @classmethod
    def basis(cls, label):
        return cls({label: ONE})

    def coefficient(self, label) -> RationalFunction:
        return self.coeffs.get(label, ZERO)

    def support(self):
        return set(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def items(self):
        return self.coeffs.items()

    def __add__(self, other):
        if not isinstance(other, QuantumElement):
            return NotImplemented
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            s = out.get(label, ZERO) + c
            if s:
                out[label] = s
            elif label in out:
                del out[label]
        return QuantumElement(out)

    def __sub__(self, other):
        if not isinstance(other, QuantumElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return QuantumElement({l: -c for l, c in self.coeffs.items()})

    def scale(self, c):
        c = _as_scalar(c)
        if not c:
            return QuantumElement()
        return QuantumElement({l: x * c for l, x in self.coeffs.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, RationalFunction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QuantumElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "QuantumElement(0)"
        body = " + ".join(
            f"({render_scalar(c)})*[{l}]" for l, c in sorted(self.coeffs.items())
        )
        return f"QuantumElement({body})"


@dataclass(frozen=True)
class Grading:
    """Real degree per label; q itself carries real degree -2*chern_number."""

    real_degree: dict
    chern_number: int


@dataclass(frozen=True)
class DiagnoseReport:
    rank: int
    euler_class: QuantumElement
    f_of_euler: RationalFunction
    euler_square: QuantumElement
    semisimple: bool
    field_factor: bool


class FrobeniusAlgebra:
    """Commutative Frobenius algebra with explicit structure constants.

    ``structure_constants`` maps ordered label pairs to QuantumElements;
    missing mirror pairs are filled in by symmetry.  ``functional`` maps
    each label to f(e_label).
    """

    def __init__(self, basis, structure_constants, unit, functional,
                 grading=None, name=None):
        self.basis = list(basis)
        self.index = {label: i for i, label in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("duplicate basis labels")
        table = {}
        for (a, b), elem in structure_constants.items():
            self._check_label(a)
            self._check_label(b)
            table[(a, b)] = elem
            if (b, a) not in structure_constants:
                table[(b, a)] = elem
        self.structure_constants = table
        self.unit = unit if isinstance(unit, QuantumElement) else QuantumElement.basis(unit)
        self.functional = {l: _as_scalar(c) for l, c in functional.items()}
        self.grading = grading
        self.name = name
        self.rank = len(self.basis)
        self._gram = None
        self._dual = None
        self._euler = None

    def _check_label(self, label):
        if label not in self.index:
            raise UnknownLabel(f"label {label!r} is not in the basis")

    # -- ring operations ----------------------------------------------------

    def multiply(self, x: QuantumElement, y: QuantumElement) -> QuantumElement:
        """Bilinear extension of the structure constants."""
        acc = {}
        for a, ca in x.items():
            self._check_label(a)
            for b, cb in y.items():
                self._check_label(b)
                prod = self.structure_constants.get((a, b))
                if prod is None:
                    raise UnknownLabel(f"no structure constant for ({a!r}, {b!r})")
                c = ca * cb
                for l, cl in prod.items():
                    s = acc.get(l, ZERO) + c * cl
                    if s:
                        acc[l] = s
                    elif l in acc:
                        del acc[l]
        return QuantumElement(acc)

    def f(self, x: QuantumElement) -> RationalFunction:
        """The Frobenius functional, extended linearly."""
        total = ZERO
        for l, c in x.items():
            total = total + c * self.functional.get(l, ZERO)
        return total

    def eta(self, x: QuantumElement, y: QuantumElement) -> RationalFunction:
        return self.f(self.multiply(x, y))

    def gram_matrix(self):
        """Matrix of eta on the basis: eta[i][j] = f(e_i * e_j)."""
        if self._gram is None:
            rows = []
            for a in self.basis:
                row = []
                for b in self.basis:
                    row.append(self.f(self.structure_constants[(a, b)]))
                rows.append(row)
            self._gram = rows
        return self._gram

    def dual_basis(self):
        """Basis elements e_j^dual with f(e_i * e_j^dual) = delta_ij."""
        if self._dual is None:
            eta = self.gram_matrix()
            n = self.rank
            try:
                inv = linalg.solve(eta, linalg.identity(n, ONE, ZERO))
            except linalg.SingularMatrix as exc:
                raise DegeneratePairing("pairing matrix is singular") from exc
            duals = []
            for j in range(n):
                duals.append(QuantumElement(
                    {self.basis[i]: inv[i][j] for i in range(n)}))
            self._dual = duals
        return self._dual

    def euler_class(self) -> QuantumElement:
        """sum over the basis of e_i * e_i^dual; independent of the basis."""
        if self._euler is None:
            total = QuantumElement()
            for label, dual in zip(self.basis, self.dual_basis()):
                total = total + self.multiply(QuantumElement.basis(label), dual)
            self._euler = total
        return self._euler

    # -- multiplication operators -------------------------------------------

    def operator_matrix(self, x: QuantumElement):
        """Matrix of y -> x * y on the basis (column j = x * e_j)."""
        cols = []
        for b in self.basis:
            cols.append(self.multiply(x, QuantumElement.basis(b)))
        return [
            [col.coefficient(a) for col in cols]
            for a in self.basis
        ]

    def trace_of_multiplication(self, x: QuantumElement) -> RationalFunction:
        total = ZERO
        for b in self.basis:
            total = total + self.multiply(x, QuantumElement.basis(b)).coefficient(b)
        return total

    def is_unit(self, x: QuantumElement) -> bool:
        """True iff the multiplication operator of x is invertible."""
        return not _poly_matrix_det_is_zero(self.operator_matrix(x))

    def inverse(self, x: QuantumElement) -> QuantumElement:
        """Solve x * y = unit; raises NotAUnit when x is not invertible."""
        m = self.operator_matrix(x)
        rhs = [[self.unit.coefficient(a)] for a in self.basis]
        try:
            sol = linalg.solve(m, rhs)
        except linalg.SingularMatrix as exc:
            raise NotAUnit("element has a singular multiplication operator") from exc
        return QuantumElement({self.basis[i]: sol[i][0] for i in range(self.rank)})

    def is_nilpotent(self, x: QuantumElement) -> bool:
        """True iff the multiplication operator to the rank-th power vanishes."""
        return _poly_matrix_power_is_zero(self.operator_matrix(x), self.rank)

    # -- diagnosis -----------------------------------------------------------

    def diagnose(self) -> DiagnoseReport:
        e = self.euler_class()
        e_square = self.multiply(e, e)
        return DiagnoseReport(
            rank=self.rank,
            euler_class=e,
            f_of_euler=self.f(e),
            euler_square=e_square,
            semisimple=self.is_unit(e),
            field_factor=not e_square.is_zero(),
        )

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Check every algebra axiom; returns a list of violation strings."""
        out = []
        n = self.rank
        elems = [QuantumElement.basis(l) for l in self.basis]
        for i in range(n):
            for j in range(i, n):
                a, b = self.basis[i], self.basis[j]
                if self.structure_constants[(a, b)] != self.structure_constants[(b, a)]:
                    out.append(f"commutativity fails for pair ({a}, {b})")
        for i, l in enumerate(self.basis):
            if self.multiply(self.unit, elems[i]) != elems[i]:
                out.append(f"unit law fails at {l}")
        for i in range(n):
            for j in range(n):
                ij = self.structure_constants[(self.basis[i], self.basis[j])]
                for k in range(n):
                    left = self.multiply(ij, elems[k])
                    jk = self.structure_constants[(self.basis[j], self.basis[k])]
                    right = self.multiply(elems[i], jk)
                    if left != right:
                        out.append(
                            "associativity fails for triple "
                            f"({self.basis[i]}, {self.basis[j]}, {self.basis[k]})"
                        )
        if _poly_matrix_det_is_zero(self.gram_matrix()):
            out.append("pairing matrix is degenerate")
        if self.grading is not None:
            out.extend(self._validate_grading())
        return out

    def _validate_grading(self):
        out = []
        deg = self.grading.real_degree
        two_n = deg[next(iter(self.unit.support()))]
        twice_chern = 2 * self.grading.chern_number
        for (a, b), prod in self.structure_constants.items():
            want = deg[a] + deg[b] - two_n
            for l, c in prod.items():
                if not c.is_polynomial():
                    out.append(f"non-polynomial coefficient in {a}*{b}")
                    continue
                for k in c.num.terms:
                    if deg[l] - twice_chern * k != want:
                        out.append(
                            f"grading fails in {a}*{b}: term q^{k}*{l}"
                        )
        return out

    # -- rendering -----------------------------------------------------------

    def _render_order(self, labels):
        if self.grading is not None:
            deg = self.grading.real_degree
            return sorted(labels, key=lambda l: (deg[l], self.index[l]))
        return sorted(labels, key=lambda l: self.index[l])

    def render_element(self, x: QuantumElement, label_format=None) -> str:
        """Deterministic text form: point-degree terms first, unit bare."""
        if x.is_zero():
            return "0"
        fmt = label_format or (lambda l: f"s[{l}]")
        unit_label = next(iter(self.unit.support()))
        parts = []
        for l in self._render_order(x.support()):
            c = x.coefficient(l)
            scalar = render_scalar(c)
            if l == unit_label:
                parts.append(scalar)
                continue
            if c == ONE:
                parts.append(fmt(l))
            elif c == -ONE:
                parts.append("-" + fmt(l))
            else:
                if (" + " in scalar) or (" - " in scalar):
                    scalar = f"({scalar})"
                parts.append(f"{scalar}*{fmt(l)}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def element_to_json(self, x: QuantumElement) -> dict:
        return {l: render_scalar(x.coefficient(l)) for l in self._render_order(x.support())}

    def report_to_json(self, report: DiagnoseReport) -> dict:
        return {
            "rank": report.rank,
            "euler_class": self.element_to_json(report.euler_class),
            "f_of_euler": render_scalar(report.f_of_euler),
            "euler_square": self.element_to_json(report.euler_square),
            "semisimple": report.semisimple,
            "field_factor": report.field_factor,
        }

    def __repr__(self):
        return f"FrobeniusAlgebra({self.name or ''} rank={self.rank})"


# ---------------------------------------------------------------------------
# exact zero tests for matrices over Q(q)
#
# Both tests clear denominators and then decide by evaluating at enough
# rational points: a polynomial of degree at most D vanishing at D+1 points
# is zero.  This avoids symbolic determinant blowup on rank-20 matrices.
# ---------------------------------------------------------------------------

def _clear_denominators(m):
    """Return (N, maxdeg): N integer-matrix-of-polynomials equal to m times
    the product of all denominators; only zero-ness of powers/dets matters."""
    from .scalar import QPolynomial, poly_gcd

    denoms = []
    for row in m:
        for x in row:
            if not x.is_polynomial():
                denoms.append(x.den)
    common = QPolynomial.constant(1)
    for d in denoms:
        g = poly_gcd(common, d)
        extra, _ = divmod(d, g)
        common = common * extra
    cleared = []
    for row in m:
        new_row = []
        for x in row:
            quot, rem = divmod(common, x.den)
            assert rem.is_zero()
            new_row.append(x.num * quot)
        cleared.append(new_row)
    maxdeg = max((p.degree() for row in cleared for p in row), default=-1)
    return cleared, maxdeg


def _poly_matrix_det_is_zero(m) -> bool:
    n = len(m)
    if n == 0:
        return False
    cleared, maxdeg = _clear_denominators(m)
    if maxdeg < 0:
        return True
    bound = n * maxdeg + 1
    for point in range(1, bound + 1):
        point = Fraction(point)
        numeric = [[p.evaluate(point) for p in row] for row in cleared]
        if linalg.det(numeric):
            return False
    return True


def _poly_matrix_power_is_zero(m, power: int) -> bool:
    cleared, maxdeg = _clear_denominators(m)
    if maxdeg < 0:
        return True
    bound = power * maxdeg + 1
    for point in range(1, bound + 1):
        point = Fraction(point)
        acc = [[p.evaluate(point) for p in row] for row in cleared]
        # nilpotency index <= matrix size, so squaring past `power` suffices
        exponent = 1
        while exponent < power and not linalg.is_zero_matrix(acc):
            acc = linalg.mat_mul(acc, acc)
            exponent *= 2
        if not linalg.is_zero_matrix(acc):
            return False
    return True


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def direct_sum(a: FrobeniusAlgebra, b: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """Orthogonal direct sum: cross products vanish, functionals add.

    Overlapping label sets are disjointified with ``A.``/``B.`` prefixes.
    """
    overlap = set(a.basis) & set(b.basis)

    def left(l):
        return f"A.{l}" if overlap else l

    def right(l):
        return f"B.{l}" if overlap else l

    basis = [left(l) for l in a.basis] + [right(l) for l in b.basis]
    zero = QuantumElement()
    table = {}
    for (x, y), prod in a.structure_constants.items():
        table[(left(x), left(y))] = QuantumElement(
            {left(l): c for l, c in prod.items()})
    for (x, y), prod in b.structure_constants.items():
        table[(right(x), right(y))] = QuantumElement(
            {right(l): c for l, c in prod.items()})
    for x in a.basis:
        for y in b.basis:
            table[(left(x), right(y))] = zero
            table[(right(y), left(x))] = zero
    unit = QuantumElement(
        {left(l): c for l, c in a.unit.items()}
    ) + QuantumElement({right(l): c for l, c in b.unit.items()})
    functional = {left(l): c for l, c in a.functional.items()}
    functional.update({right(l): c for l, c in b.functional.items()})
    name = f"{a.name or 'A'} (+) {b.name or 'B'}"
    return FrobeniusAlgebra(basis, table, unit, functional, name=name)


def change_basis(algebra: FrobeniusAlgebra, p) -> FrobeniusAlgebra:
    """Transport the algebra along an invertible matrix over Q(q).

    Column j of ``p`` holds the old-basis coordinates of the new basis
    vector carrying label ``basis[j]``.  The grading is dropped since a
    generic change of basis mixes degrees.
    """
    n = algebra.rank
    p = [[_as_scalar(x) for x in row] for row in p]
    p_inv = linalg.solve(p, linalg.identity(n, ONE, ZERO))

    def old_to_new(elem: QuantumElement) -> QuantumElement:
        vec = [elem.coefficient(l) for l in algebra.basis]
        new_vec = linalg.mat_vec(p_inv, vec)
        return QuantumElement(
            {algebra.basis[i]: new_vec[i] for i in range(n)})

    new_elems = []
    for j in range(n):
        new_elems.append(QuantumElement(
            {algebra.basis[i]: p[i][j] for i in range(n)}))
    table = {}
    for i in range(n):
        for j in range(n):
            prod = algebra.multiply(new_elems[i], new_elems[j])
            table[(algebra.basis[i], algebra.basis[j])] = old_to_new(prod)
    functional = {
        algebra.basis[j]: algebra.f(new_elems[j]) for j in range(n)
    }
    unit = old_to_new(algebra.unit)
    return FrobeniusAlgebra(algebra.basis, table, unit, functional,
                            name=f"{algebra.name or 'algebra'} (new basis)")


def new_basis_to_old(algebra: FrobeniusAlgebra, p, elem: QuantumElement) -> QuantumElement:
    """Express an element of the transported algebra in the original basis."""
    n = algebra.rank
    p = [[_as_scalar(x) for x in row] for row in p]
    vec = [elem.coefficient(l) for l in algebra.basis]
    old_vec = linalg.mat_vec(p, vec)
    return QuantumElement({algebra.basis[i]: old_vec[i] for i in range(n)})


# ---------------------------------------------------------------------------
# small bundled test algebras
# ---------------------------------------------------------------------------

def dual_numbers() -> FrobeniusAlgebra:
    """K[eps]/(eps^2) with f(a + b*eps) = b; the minimal non-field example."""
    one, eps = "1", "e"
    table = {
        (one, one): QuantumElement.basis(one),
        (one, eps): QuantumElement.basis(eps),
        (eps, eps): QuantumElement(),
    }
    functional = {one: ZERO, eps: ONE}
    return FrobeniusAlgebra([one, eps], table, one, functional,
                            name="K[e]/(e^2)")


def base_field(label="1") -> FrobeniusAlgebra:
    """Q(q) itself as a rank-1 Frobenius algebra with f = identity."""
    table = {(label, label): QuantumElement.basis(label)}
    return FrobeniusAlgebra([label], table, label, {label: ONE},
                            name="Q(q)")


def quadratic_extension(c) -> FrobeniusAlgebra:
    """Q(q)[x]/(x^2 - c) with f(a + b*x) = b; a field when c is a non-square."""
    one, x = "1", "x"
    c = _as_scalar(c)
    table = {
        (one, one): QuantumElement.basis(one),
        (one, x): QuantumElement.basis(x),
        (x, x): QuantumElement({one: c}),
    }
    functional = {one: ZERO, x: ONE}
    return FrobeniusAlgebra([one, x], table, one, functional,
                            name=f"Q(q)[x]/(x^2 - {render_scalar(c)})")


def nilpotent_chain(m: int) -> FrobeniusAlgebra:
    """K[e]/(e^m) with f = coefficient of e^(m-1); indecomposable, not a field."""
    labels = [f"e{i}" for i in range(m)]
    table = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                table[(labels[i], labels[j])] = QuantumElement.basis(labels[i + j])
            else:
                table[(labels[i], labels[j])] = QuantumElement()
    functional = {l: (ONE if i == m - 1 else ZERO) for i, l in enumerate(labels)}
    return FrobeniusAlgebra(labels, table, labels[0], functional,
                            name=f"K[e]/(e^{m})")
