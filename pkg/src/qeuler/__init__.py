"""Exact quantum Euler classes, semisimplicity diagnosis, and minimum-area
chain bounds for homogeneous spaces, over the rational-function field Q(q)."""

from .frobenius import (
    DiagnoseReport,
    FrobeniusAlgebra,
    Grading,
    QuantumElement,
    change_basis,
    direct_sum,
)
from .grassmannian import GrassmannianRing, enumerate_basis
from .presented import bundled_ig26_path, complete_table, load_algebra, parse_spec
from .rootgkm import (
    OrbitSpec,
    build_root_system,
    gkm_graph,
    hz_upper_bound,
    make_orbit_spec,
    un_closed_form,
)
from .scalar import QPolynomial, RationalFunction, parse_scalar, poly_gcd, render_scalar

__version__ = "0.1.0"

__all__ = [
    "DiagnoseReport",
    "FrobeniusAlgebra",
    "Grading",
    "GrassmannianRing",
    "OrbitSpec",
    "QPolynomial",
    "QuantumElement",
    "RationalFunction",
    "build_root_system",
    "bundled_ig26_path",
    "change_basis",
    "complete_table",
    "direct_sum",
    "enumerate_basis",
    "gkm_graph",
    "hz_upper_bound",
    "load_algebra",
    "make_orbit_spec",
    "parse_scalar",
    "parse_spec",
    "poly_gcd",
    "render_scalar",
    "un_closed_form",
]
