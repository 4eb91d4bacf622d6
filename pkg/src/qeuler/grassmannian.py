"""Quantum homology of the Grassmannian G(k, n) on the Schubert basis.

Classes are indexed by partitions in the k x (n-k) box.  Products are
computed two independent ways:

* ``quantum_product`` expands one factor through the Giambelli determinant
  in the special classes s_1 .. s_{n-k} and applies the quantum Pieri rule
  repeatedly;
* ``rim_hook_product`` computes the classical Littlewood-Richardson
  expansion in at most k rows (Jacobi-Trudi determinant plus classical
  Pieri steps) and then reduces each term by removing border strips of
  size n, with a sign per removal.

Their agreement on every basis pair is part of the test suite, not an
assumption.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import comb

from .errors import InvalidShape, InvalidSpecialClass, UnknownLabel
from .frobenius import FrobeniusAlgebra, Grading, QuantumElement
from .scalar import RationalFunction

Partition = tuple

def parse_partition(label: str) -> Partition:
    """Partition from its label: "2,1" -> (2, 1), "0" or "" -> ()."""
    label = label.strip()
    if label in ("", "0"):
        return ()
    try:
        parts = tuple(int(p) for p in label.split(","))
    except ValueError:
        raise UnknownLabel(f"bad partition label {label!r}") from None
    if any(p < 0 for p in parts) or any(
        parts[i] < parts[i + 1] for i in range(len(parts) - 1)
    ):
        raise UnknownLabel(f"bad partition label {label!r}")
    return tuple(p for p in parts if p > 0)


def partition_label(p: Partition) -> str:
    return ",".join(str(x) for x in p) if p else "0"


def _pad(p: Partition, k: int) -> tuple:
    return tuple(p) + (0,) * (k - len(p))


class GrassmannianRing:
    """QH of G(k, n): basis, duality, Pieri, Giambelli, rim-hook oracle."""

    def __init__(self, k: int, n: int):
        if k <= 0 or k >= n:
            raise InvalidShape(f"need 0 < k < n, got k={k}, n={n}")
        self.k = k
        self.n = n
        self.width = n - k
        self.chern_number = n
        self.complex_dimension = k * (n - k)
        self.basis = enumerate_basis(k, n)
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self._product_cache = {}

    def check_member(self, p: Partition):
        if p not in self.basis_index:
            raise UnknownLabel(
                f"partition {partition_label(p)} not in the {self.k}x{self.width} box")

    def dual_partition(self, p: Partition) -> Partition:
        """Complement rotated by a half turn; pairs dual Schubert classes."""
        self.check_member(p)
        padded = _pad(p, self.k)
        return tuple(
            x for x in (self.width - padded[self.k - 1 - i] for i in range(self.k)) if x
        )

    def degree(self, p: Partition) -> int:
        """Real degree of the class: 2*(dim - |p|)."""
        return 2 * (self.complex_dimension - sum(p))

    # -- quantum Pieri / Giambelli route --------------------------------------

    def quantum_pieri_raw(self, p: int, lam: Partition):
        """Multiply by the special class s_p.

        Returns a list of (partition, q_power) terms, each with
        coefficient 1 (the rule is multiplicity free).
        """
        if not 1 <= p <= self.width:
            raise InvalidSpecialClass(
                f"special class index must be in 1..{self.width}, got {p}")
        self.check_member(lam)
        lam_p = _pad(lam, self.k)
        out = [(mu, 0) for mu in self._strips_above(lam_p, p)]
        qsize = sum(lam) + p - self.n
        if qsize >= 0 and lam_p[self.k - 1] >= 1:
            for nu in self._quantum_partitions(lam_p, qsize):
                out.append((nu, 1))
        return out

    def _strips_above(self, lam_p, p):
        """Partitions in the box adding a horizontal strip of size p to lam."""
        results = []

        def rec(i, remaining, acc, upper):
            if i == self.k:
                if remaining == 0:
                    results.append(tuple(x for x in acc if x))
                return
            low = lam_p[i]
            high = min(upper, low + remaining)
            for mu_i in range(low, high + 1):
                rec(i + 1, remaining - (mu_i - low), acc + [mu_i],
                    lam_p[i])  # strip condition: mu_{i+1} <= lam_i
            return

        rec(0, p, [], self.width)
        return results

    def _quantum_partitions(self, lam_p, size):
        """Partitions nu with lam_1 - 1 >= nu_1 >= lam_2 - 1 >= ... >= nu_k >= 0
        and |nu| = size."""
        results = []

        def rec(i, remaining, acc):
            if i == self.k:
                if remaining == 0:
                    results.append(tuple(x for x in acc if x))
                return
            upper = lam_p[i] - 1
            lower = lam_p[i + 1] - 1 if i + 1 < self.k else 0
            lower = max(lower, 0)
            for nu_i in range(lower, upper + 1):
                if nu_i <= remaining:
                    rec(i + 1, remaining - nu_i, acc + [nu_i])

        rec(0, size, [])
        return results

    def quantum_pieri(self, p: int, lam: Partition) -> QuantumElement:
        acc = {}
        for nu, d in self.quantum_pieri_raw(p, lam):
            key = partition_label(nu)
            cur = acc.get(key)
            term = RationalFunction.monomial(1, d)
            acc[key] = term if cur is None else cur + term
        return QuantumElement(acc)

    def _giambelli_monomials(self, mu: Partition):
        """Expansion of s_mu as a signed sum of products of special classes.

        Determinant of the k x k matrix with entries s_{mu_i + j - i},
        where entries outside 0..n-k vanish and s_0 = 1.
        """
        mu_p = _pad(mu, self.k)
        monomials = []
        for perm in permutations(range(self.k)):
            sign = _perm_sign(perm)
            factors = []
            ok = True
            for i in range(self.k):
                idx = mu_p[i] + perm[i] - i
                if idx < 0 or idx > self.width:
                    ok = False
                    break
                if idx > 0:
                    factors.append(idx)
            if ok:
                monomials.append((sign, factors))
        return monomials

    def quantum_product(self, lam: Partition, mu: Partition) -> QuantumElement:
        """Quantum product of two Schubert classes via Pieri and Giambelli."""
        self.check_member(lam)
        self.check_member(mu)
        key = (lam, mu) if lam <= mu else (mu, lam)
        cached = self._product_cache.get(key)
        if cached is None:
            acc = {}
            for sign, factors in self._giambelli_monomials(key[1]):
                terms = {(key[0], 0): 1}
                for p in factors:
                    nxt = {}
                    for (part, d), c in terms.items():
                        for part2, d2 in self.quantum_pieri_raw(p, part):
                            k2 = (part2, d + d2)
                            nxt[k2] = nxt.get(k2, 0) + c
                    terms = nxt
                for (part, d), c in terms.items():
                    acc[(part, d)] = acc.get((part, d), 0) + sign * c
            cached = _collect(acc)
            self._product_cache[key] = cached
        return cached

    # -- rim-hook oracle route -------------------------------------------------

    def rim_hook_product(self, lam: Partition, mu: Partition) -> QuantumElement:
        """Independent oracle: classical LR expansion, then n-rim-hook reduction."""
        self.check_member(lam)
        self.check_member(mu)
        acc = {}
        for rho, c in _classical_product_rows_capped(lam, mu, self.k).items():
            reduced = rim_hook_reduce(rho, self.k, self.n)
            if reduced is None:
                continue
            nu, d, sign = reduced
            key = (nu, d)
            acc[key] = acc.get(key, 0) + sign * c
        return _collect(acc)

    # -- compilation -----------------------------------------------------------

    def to_frobenius(self) -> FrobeniusAlgebra:
        """Compile to a Frobenius algebra: f = coefficient at the point class."""
        labels = [partition_label(p) for p in self.basis]
        table = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                if i <= j:
                    table[(labels[i], labels[j])] = self.quantum_product(a, b)
        point = partition_label((self.width,) * self.k)
        functional = {l: (1 if l == point else 0) for l in labels}
        grading = Grading(
            real_degree={partition_label(p): self.degree(p) for p in self.basis},
            chern_number=self.chern_number,
        )
        return FrobeniusAlgebra(
            labels, table, "0", functional, grading=grading,
            name=f"QH(G({self.k},{self.n}))",
        )

    # -- rendering ---------------------------------------------------------------

    def table_markdown(self) -> str:
        """Full multiplication table as a markdown grid, row/column per class."""
        algebra = self.to_frobenius()

        def head(p):
            return "1" if not p else f"s[{partition_label(p)}]"

        header = ["*"] + [head(p) for p in self.basis]
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "---|" * len(header)]
        for a in self.basis:
            row = [head(a)]
            for b in self.basis:
                row.append(algebra.render_element(self.quantum_product(a, b)))
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"

    def table_json(self) -> dict:
        algebra = self.to_frobenius()
        out = {}
        for a in self.basis:
            for b in self.basis:
                key = f"{partition_label(a)}|{partition_label(b)}"
                out[key] = algebra.element_to_json(self.quantum_product(a, b))
        return out

    def __repr__(self):
        return f"GrassmannianRing(k={self.k}, n={self.n})"


def enumerate_basis(k: int, n: int):
    """All partitions in the k x (n-k) box, sorted by (size, lex)."""
    if k <= 0 or k >= n:
        raise InvalidShape(f"need 0 < k < n, got k={k}, n={n}")
    width = n - k
    found = []

    def rec(row, maxpart, acc):
        found.append(tuple(acc))
        if row == k:
            return
        for part in range(1, maxpart + 1):
            rec(row + 1, part, acc + [part])

    rec(0, width, [])
    assert len(found) == comb(n, k)
    return sorted(found, key=lambda p: (sum(p), p))


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _collect(acc) -> QuantumElement:
    coeffs = {}
    for (part, d), c in acc.items():
        if c == 0:
            continue
        label = partition_label(part)
        term = RationalFunction.monomial(c, d)
        coeffs[label] = coeffs.get(label, 0 * term) + term
    return QuantumElement({l: c for l, c in coeffs.items() if c})


# ---------------------------------------------------------------------------
# oracle internals: classical products in <= k rows, then rim-hook reduction
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _classical_pieri_rows_capped(lam: Partition, p: int, k: int):
    """Classical Pieri step: add a horizontal strip of size p, keep <= k rows,
    no bound on the width.  Returns a tuple of partitions."""
    lam_p = _pad(lam, k)
    results = []
    # boxes[i] added to row i must keep mu decreasing and satisfy the strip
    # condition mu_{i+1} <= lam_i.
    def rec(i, remaining, acc):
        if i == k:
            if remaining == 0:
                results.append(tuple(x for x in acc if x))
            return
        if i == 0:
            options = range(remaining + 1)
        else:
            cap = min(remaining, max(lam_p[i - 1] - lam_p[i], 0))
            options = range(cap + 1)
        for add in options:
            mu_i = lam_p[i] + add
            if i > 0 and mu_i > acc[i - 1]:
                continue
            rec(i + 1, remaining - add, acc + [mu_i])

    rec(0, p, [])
    return tuple(results)


def _jacobi_trudi_monomials(mu: Partition, k: int):
    """s_mu as a signed sum of products h_{p1} * h_{p2} * ...; no truncation."""
    mu_p = _pad(mu, k)
    out = []
    for perm in permutations(range(k)):
        sign = _perm_sign(perm)
        factors = []
        ok = True
        for i in range(k):
            idx = mu_p[i] + perm[i] - i
            if idx < 0:
                ok = False
                break
            if idx > 0:
                factors.append(idx)
        if ok:
            out.append((sign, factors))
    return out


def _classical_product_rows_capped(lam: Partition, mu: Partition, k: int) -> dict:
    """Littlewood-Richardson expansion of s_lam * s_mu kept to <= k rows."""
    acc = {}
    for sign, factors in _jacobi_trudi_monomials(mu, k):
        terms = {lam: 1}
        for p in factors:
            nxt = {}
            for part, c in terms.items():
                for part2 in _classical_pieri_rows_capped(part, p, k):
                    nxt[part2] = nxt.get(part2, 0) + c
            terms = nxt
        for part, c in terms.items():
            acc[part] = acc.get(part, 0) + sign * c
    return {p: c for p, c in acc.items() if c}


def rim_hook_reduce(rho: Partition, k: int, n: int, sign_rule: str = "k-minus-height"):
    """Reduce a <= k-row partition into the k x (n-k) box by removing
    border strips of size n.

    Returns (partition, strips_removed, sign) or None when the term dies.
    The computation runs on first-column hook lengths: removing a strip
    subtracts n from one of them, and a strip of height h passes h-1
    other hook lengths on the way down.

    The per-strip sign is (-1)**(k - h) by default; the alternative
    convention (-1)**(h - 1) is kept for the calibration test that pins
    the default against the quantum Pieri rule.
    """
    if len(rho) > k:
        raise ValueError("partition has more rows than k")
    rho_p = _pad(rho, k)
    beta = [rho_p[i] + (k - 1 - i) for i in range(k)]
    residues = [b % n for b in beta]
    if len(set(residues)) < k:
        return None
    strips = sum((b - r) // n for b, r in zip(beta, residues))
    inversions = 0
    for i in range(k):
        for j in range(i + 1, k):
            if residues[i] < residues[j]:
                inversions += 1
    sign = -1 if inversions % 2 else 1
    if sign_rule == "k-minus-height":
        if (strips * (k - 1)) % 2:
            sign = -sign
    elif sign_rule != "height-minus-one":
        raise ValueError(f"unknown sign rule {sign_rule!r}")
    ordered = sorted(residues, reverse=True)
    nu = tuple(ordered[i] - (k - 1 - i) for i in range(k))
    assert all(0 <= nu[i] <= n - k for i in range(k))
    return tuple(x for x in nu if x), strips, sign
