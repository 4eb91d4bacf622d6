"""Command-line front end.

Subcommands::

    grassmannian -k K -n N {table,euler,diagnose,product} [labels...]
    algebra --file PATH {table,euler,diagnose,product} [labels...]
    orbit --family F --rank R [--parabolic I,J] [--lambda ...] [--kappa K]
          {chern,monotone-weight,gkm,hz-bound}
    un-capacity --lambda L1,L2,...

Exit codes: 0 success, 1 usage error, 2 invalid input or failed validation,
3 arithmetic failure.  ``--format`` switches the renderer (text, md, json,
dot) and never changes computed values.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import presented, rootgkm
from .errors import ComputeError, InputError, TooLarge
from .grassmannian import GrassmannianRing, parse_partition, partition_label


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qeuler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grassmannian", help="quantum ring of G(k, n)")
    g.add_argument("-k", type=int, required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--allow-large", action="store_true",
                   help="lift the k*(n-k) <= 12 guard")
    g.add_argument("action", choices=["table", "euler", "diagnose", "product"])
    g.add_argument("labels", nargs="*", help="class labels for `product`")
    g.add_argument("--format", choices=["text", "md", "json"], default="text")

    a = sub.add_parser("algebra", help="algebra presented by a data file")
    a.add_argument("--file", required=True)
    a.add_argument("action", choices=["table", "euler", "diagnose", "product"])
    a.add_argument("labels", nargs="*")
    a.add_argument("--format", choices=["text", "md", "json"], default="text")

    o = sub.add_parser("orbit", help="flag-manifold orbit data")
    o.add_argument("--family", required=True, choices=list("ABCDabcd"))
    o.add_argument("--rank", type=int, required=True)
    o.add_argument("--parabolic", default="",
                   help="comma-separated 1-based simple-root indices in S_P")
    o.add_argument("--lambda", dest="weight", default=None,
                   help="comma-separated rational coordinates of the weight")
    o.add_argument("--kappa", default="1", help="monotonicity constant")
    o.add_argument("action",
                   choices=["chern", "monotone-weight", "gkm", "hz-bound"])
    o.add_argument("--format", choices=["text", "json", "dot"], default="text")

    u = sub.add_parser("un-capacity",
                       help="closed-form oscillation bound for unitary orbits")
    u.add_argument("--lambda", dest="weight", required=True)
    u.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _parse_rationals(text: str):
    try:
        return [Fraction(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InputError(f"cannot parse rational list {text!r}") from None


def _parse_indices(text: str):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError:
        raise InputError(f"cannot parse index list {text!r}") from None


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- grassmannian / algebra actions -------------------------------------------

def _algebra_output(algebra, ring, action, labels, fmt):
    if action == "product":
        if len(labels) != 2:
            raise _UsageError("`product` needs exactly two class labels")
        if ring is not None:
            a, b = (parse_partition(l) for l in labels)
            result = ring.quantum_product(a, b)
        else:
            x = _element_from_label(algebra, labels[0])
            y = _element_from_label(algebra, labels[1])
            result = algebra.multiply(x, y)
        if fmt == "json":
            return _json_text(algebra.element_to_json(result))
        return algebra.render_element(result) + "\n"

    if action == "euler":
        e = algebra.euler_class()
        if fmt == "json":
            return _json_text(algebra.element_to_json(e))
        return algebra.render_element(e) + "\n"

    if action == "diagnose":
        report = algebra.diagnose()
        payload = algebra.report_to_json(report)
        if fmt == "json":
            return _json_text(payload)
        lines = [
            f"rank: {payload['rank']}",
            f"euler class: {algebra.render_element(report.euler_class)}",
            f"f(euler) = {payload['f_of_euler']}",
            f"euler^2: {algebra.render_element(report.euler_square)}",
            f"semisimple: {str(report.semisimple).lower()}",
            f"field factor: {str(report.field_factor).lower()}",
        ]
        return "\n".join(lines) + "\n"

    # table
    if ring is not None:
        if fmt == "json":
            return _json_text(ring.table_json())
        if fmt == "md":
            return ring.table_markdown()
        lines = []
        for a in ring.basis:
            for b in ring.basis:
                prod = ring.quantum_product(a, b)
                lines.append(
                    f"s[{partition_label(a)}] * s[{partition_label(b)}] = "
                    + algebra.render_element(prod))
        return "\n".join(lines) + "\n"
    return _presented_table(algebra, fmt)


def _element_from_label(algebra, label):
    from .frobenius import QuantumElement

    algebra._check_label(label)
    return QuantumElement.basis(label)


def _presented_table(algebra, fmt):
    from .frobenius import QuantumElement

    if fmt == "json":
        out = {}
        for a in algebra.basis:
            for b in algebra.basis:
                prod = algebra.structure_constants[(a, b)]
                out[f"{a}|{b}"] = algebra.element_to_json(prod)
        return _json_text(out)
    if fmt == "md":
        header = ["*"] + [f"s[{b}]" for b in algebra.basis]
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        for a in algebra.basis:
            row = [f"s[{a}]"]
            for b in algebra.basis:
                row.append(algebra.render_element(algebra.structure_constants[(a, b)]))
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"
    lines = []
    for a in algebra.basis:
        for b in algebra.basis:
            prod = algebra.structure_constants[(a, b)]
            lines.append(f"s[{a}] * s[{b}] = " + algebra.render_element(prod))
    return "\n".join(lines) + "\n"


# -- orbit actions --------------------------------------------------------------

def _orbit_output(args) -> str:
    family = args.family.upper()
    parabolic = _parse_indices(args.parabolic)
    if args.weight is not None:
        weight = _parse_rationals(args.weight)
    else:
        weight = rootgkm.monotone_weight(family, args.rank, parabolic,
                                         Fraction(args.kappa))
    spec = rootgkm.make_orbit_spec(family, args.rank, parabolic, weight)

    if args.action == "chern":
        numbers = rootgkm.chern_numbers(spec)
        if args.format == "json":
            return _json_text({
                "n": {f"a{a}": v for a, v in sorted(numbers["n"].items())},
                "N": numbers["N"],
            })
        parts = [f"n(a{a}) = {v}" for a, v in sorted(numbers["n"].items())]
        return "; ".join(parts) + f"; N = {numbers['N']}\n"

    if args.action == "monotone-weight":
        lam = rootgkm.monotone_weight(family, args.rank, parabolic,
                                      Fraction(args.kappa))
        if args.format == "json":
            return _json_text([str(x) for x in lam])
        return ",".join(str(x) for x in lam) + "\n"

    if args.action == "gkm":
        graph = rootgkm.gkm_graph(spec)
        if args.format == "json":
            payload = {
                "vertices": [rootgkm.word_text(v.word) for v in graph.vertices],
                "edges": [
                    {
                        "from": rootgkm.word_text(graph.vertices[e.source].word),
                        "to": rootgkm.word_text(graph.vertices[e.target].word),
                        "root": rootgkm.root_text(spec.root_system, e.root),
                        "weight": str(e.weight),
                    }
                    for e in graph.edges
                ],
            }
            return _json_text(payload)
        return rootgkm.to_dot(spec, graph)

    result = rootgkm.hz_upper_bound(spec)
    if args.format == "json":
        return _json_text(rootgkm.bound_to_json(spec, result))
    return f"{result.bound}\n"


# -- entry point -------------------------------------------------------------------

def run(args) -> str:
    if args.command == "grassmannian":
        if args.k * (args.n - args.k) > 12 and not args.allow_large:
            raise TooLarge(
                f"G({args.k},{args.n}) exceeds the desk-scale guard "
                "(use --allow-large to override)")
        ring = GrassmannianRing(args.k, args.n)
        return _algebra_output(ring.to_frobenius(), ring, args.action,
                               args.labels, args.format)
    if args.command == "algebra":
        algebra = presented.load_algebra(args.file)
        return _algebra_output(algebra, None, args.action, args.labels,
                               args.format)
    if args.command == "orbit":
        return _orbit_output(args)
    value, _ = rootgkm.un_closed_form(_parse_rationals(args.weight))
    if args.format == "json":
        return _json_text({"bound": str(value)})
    return f"{value}\n"


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        output = run(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ComputeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
