import json

import pytest

from conftest import element
from qeuler.errors import (
    CyclicDefinition,
    InconsistentTable,
    MissingDefinition,
    ParseError,
    UnknownLabel,
)
from qeuler.frobenius import QuantumElement
from qeuler.presented import (
    bundled_ig26_path,
    complete_table,
    load_algebra,
    parse_expression,
    parse_spec,
    zero_divisor_check,
)
from qeuler.scalar import Q, RationalFunction


def read_bundled():
    with open(bundled_ig26_path(), encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

def test_expression_shapes():
    from qeuler.presented import BinOp, Neg, QPower, Ref

    ast = parse_expression("s[1]*s[2] - s[3]")
    assert isinstance(ast, BinOp) and ast.op == "-"
    assert ast.left == BinOp("*", Ref("1"), Ref("2"))
    assert ast.right == Ref("3")

    ast = parse_expression("-1/3*s[1]*(s[3] - 2*s[2,1])")
    assert isinstance(ast, BinOp) and ast.op == "*"

    ast = parse_expression("q^2")
    assert ast == QPower(2)
    assert parse_expression("q") == QPower(1)
    assert parse_expression("-q") == Neg(QPower(1))


def test_expression_errors():
    with pytest.raises(ParseError):
        parse_expression("s[1] +")
    with pytest.raises(ParseError):
        parse_expression("s[1] ! s[2]")
    with pytest.raises(ParseError):
        parse_expression("(s[1]")


# ---------------------------------------------------------------------------
# spec-level validation
# ---------------------------------------------------------------------------

def minimal_spec():
    # the projective line: one generator, s1 * s1 = q, chern number 2
    return {
        "name": "toy",
        "complex_dimension": 1,
        "chern_number": 2,
        "unit": "0",
        "point": "1",
        "basis": [{"label": "0", "codim": 0}, {"label": "1", "codim": 1}],
        "generators": ["1"],
        "generator_products": {
            "1|0": [{"coeff": 1, "q": 0, "label": "1"}],
            "1|1": [{"coeff": 1, "q": 1, "label": "0"}],
        },
        "definitions": [],
    }


def test_minimal_spec_completes_to_projective_line():
    algebra = complete_table(parse_spec(json.dumps(minimal_spec())))
    assert algebra.rank == 2
    x = QuantumElement.basis("1")
    assert algebra.multiply(x, x) == element({("0", 1): 1})
    assert algebra.diagnose().semisimple


def test_one_element_spec_is_the_base_field():
    spec = {
        "name": "point",
        "complex_dimension": 0,
        "chern_number": 1,
        "unit": "0",
        "point": "0",
        "basis": [{"label": "0", "codim": 0}],
        "generators": [],
        "generator_products": {},
        "definitions": [],
    }
    algebra = complete_table(parse_spec(json.dumps(spec)))
    assert algebra.rank == 1
    assert algebra.multiply(algebra.unit, algebra.unit) == algebra.unit
    report = algebra.diagnose()
    assert report.semisimple and report.f_of_euler == RationalFunction(1)


def test_cyclic_definitions_rejected():
    raw = minimal_spec()
    raw["basis"] += [{"label": "a", "codim": 1}, {"label": "b", "codim": 1}]
    raw["generator_products"]["1|a"] = [{"coeff": 1, "q": 1, "label": "0"}]
    raw["generator_products"]["1|b"] = [{"coeff": 1, "q": 1, "label": "0"}]
    raw["definitions"] = [
        {"label": "a", "expr": "s[b]"},
        {"label": "b", "expr": "s[a]"},
    ]
    with pytest.raises(CyclicDefinition):
        parse_spec(json.dumps(raw))


def test_missing_definition_rejected():
    raw = minimal_spec()
    raw["basis"].append({"label": "a", "codim": 1})
    with pytest.raises(MissingDefinition):
        parse_spec(json.dumps(raw))


def test_missing_generator_product_rejected():
    raw = minimal_spec()
    del raw["generator_products"]["1|1"]
    with pytest.raises(MissingDefinition):
        parse_spec(json.dumps(raw))


def test_unknown_label_rejected():
    raw = minimal_spec()
    raw["generator_products"]["1|1"] = [{"coeff": 1, "q": 0, "label": "zz"}]
    with pytest.raises(UnknownLabel):
        parse_spec(json.dumps(raw))


def test_point_codimension_must_match():
    raw = minimal_spec()
    raw["complex_dimension"] = 5
    with pytest.raises(ParseError):
        parse_spec(json.dumps(raw))


def test_bad_json_reports_position():
    with pytest.raises(ParseError) as info:
        parse_spec("{ nope }")
    assert info.value.line == 1


# ---------------------------------------------------------------------------
# the bundled isotropic Grassmannian
# ---------------------------------------------------------------------------

def test_bundled_file_parses_with_12_classes():
    spec = parse_spec(read_bundled())
    assert len(spec.basis) == 12
    assert spec.generators == ("1", "2", "3")
    assert spec.chern_number == 5


def test_ig26_completion_is_valid(ig26):
    # load_algebra ran complete_table with validation on; double-check here
    assert ig26.validate() == []
    assert ig26.rank == 12


def test_ig26_euler_class(ig26):
    assert ig26.euler_class() == element(
        {("4,3", 0): 12, ("2", 1): 8, ("1,1", 1): 2})
    assert ig26.f(ig26.euler_class()) == RationalFunction(12)


def test_ig26_euler_zero_divisor(ig26):
    e = ig26.euler_class()
    witness = QuantumElement({"4,3": 1, "2": -Q, "1,1": Q})
    assert zero_divisor_check(ig26, e, witness)
    assert not ig26.is_unit(e)
    assert not ig26.is_nilpotent(e)


def test_ig26_diagnose(ig26):
    report = ig26.diagnose()
    assert not report.semisimple
    assert report.field_factor
    assert report.rank == 12


def test_ig26_dual_pairs(ig26):
    # the six complementary pairs that make up the euler-class sum
    partner = {
        "0": "4,3", "1": "4,2", "2": "4,1", "1,1": "3,2", "3": "4", "2,1": "3,1",
    }
    partner.update({v: k for k, v in partner.items()})
    duals = ig26.dual_basis()
    for i, label in enumerate(ig26.basis):
        assert duals[i] == QuantumElement.basis(partner[label]), label


def test_ig26_derived_product(ig26):
    x = QuantumElement.basis("2,1")
    assert ig26.multiply(x, x) == element({("4,2", 0): 2, ("1", 1): 1})


def test_ig26_positivity_and_nonvanishing(ig26):
    for a in ig26.basis:
        for b in ig26.basis:
            prod = ig26.structure_constants[(a, b)]
            assert not prod.is_zero(), (a, b)
            for _, c in prod.items():
                assert c.is_polynomial()
                for coeff in c.num.terms.values():
                    assert coeff.denominator == 1 and coeff > 0


def test_ig26_grading():
    spec = parse_spec(read_bundled())
    algebra = complete_table(spec)
    deg = algebra.grading.real_degree
    assert algebra.grading.chern_number == 5
    assert deg["0"] == 14 and deg["4,3"] == 0
    for (a, b), prod in algebra.structure_constants.items():
        want = deg[a] + deg[b] - 14
        for label, c in prod.items():
            for qpow in c.num.terms:
                assert deg[label] - 10 * qpow == want


def test_zero_divisor_check_edge_cases(ig26, g24_algebra):
    zero = QuantumElement()
    x = QuantumElement.basis("1")
    assert not zero_divisor_check(ig26, zero, x)
    e = g24_algebra.euler_class()
    for label in g24_algebra.basis:
        assert not zero_divisor_check(
            g24_algebra, e, QuantumElement.basis(label))


def test_corrupted_table_raises_inconsistent():
    raw = json.loads(read_bundled())
    raw["generator_products"]["1|1"] = [{"coeff": 1, "q": 0, "label": "2"}]
    with pytest.raises(InconsistentTable):
        complete_table(parse_spec(json.dumps(raw)))


def test_load_algebra_from_path(tmp_path):
    target = tmp_path / "toy.json"
    target.write_text(json.dumps(minimal_spec()), encoding="utf-8")
    algebra = load_algebra(target)
    assert algebra.rank == 2
