import pytest

from qeuler.frobenius import QuantumElement
from qeuler.grassmannian import GrassmannianRing
from qeuler.presented import bundled_ig26_path, load_algebra
from qeuler.scalar import RationalFunction


def element(terms: dict) -> QuantumElement:
    """Build an element from {(label, q_power): coeff}."""
    coeffs = {}
    for (label, d), c in terms.items():
        term = RationalFunction.monomial(c, d)
        coeffs[label] = coeffs.get(label, 0 * term) + term
    return QuantumElement(coeffs)


# The 2x2-box multiplication table, transcribed cell by cell from the
# published G(2,4) table.  Keys are unordered pairs of labels; unit rows
# and columns are implied.
G24_TABLE = {
    ("1", "1"): {("2", 0): 1, ("1,1", 0): 1},
    ("1", "2"): {("2,1", 0): 1},
    ("1", "1,1"): {("2,1", 0): 1},
    ("1", "2,1"): {("2,2", 0): 1, ("0", 1): 1},
    ("1", "2,2"): {("1", 1): 1},
    ("2", "2"): {("2,2", 0): 1},
    ("2", "1,1"): {("0", 1): 1},
    ("2", "2,1"): {("1", 1): 1},
    ("2", "2,2"): {("1,1", 1): 1},
    ("1,1", "1,1"): {("2,2", 0): 1},
    ("1,1", "2,1"): {("1", 1): 1},
    ("1,1", "2,2"): {("2", 1): 1},
    ("2,1", "2,1"): {("2", 1): 1, ("1,1", 1): 1},
    ("2,1", "2,2"): {("2,1", 1): 1},
    ("2,2", "2,2"): {("0", 2): 1},
}


def g24_expected(label_a: str, label_b: str) -> QuantumElement:
    if label_a == "0":
        return QuantumElement.basis(label_b)
    if label_b == "0":
        return QuantumElement.basis(label_a)
    key = (label_a, label_b)
    if key not in G24_TABLE:
        key = (label_b, label_a)
    return element(G24_TABLE[key])


@pytest.fixture(scope="session")
def g24():
    return GrassmannianRing(2, 4)


@pytest.fixture(scope="session")
def g24_algebra(g24):
    return g24.to_frobenius()


@pytest.fixture(scope="session")
def ig26():
    return load_algebra(bundled_ig26_path())
