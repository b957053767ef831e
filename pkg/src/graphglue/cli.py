"""Command-line front end.

Documents are JSON objects.  With ``--format plain`` each top-level field is
written on its own line as ``name: <json value>``, and that form is accepted
as input too, so every emitted document can be read back.

Exit codes:
    0  success
    1  ``check`` found a failing criterion
    2  unreadable or malformed input, or bad command-line usage
    3  input parsed but failed validation
    4  ``--verify`` found a mismatch between formula and direct computation
    5  input exceeds a size limit
    6  numerical failure (no convergence, inexact arithmetic)
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import checks
from .errors import GraphGlueError, TooLarge, ValidationError
from .graph import (
    BridgeSpec,
    InterfaceSpec,
    OrientedGraph,
    canonical_interface_inputs,
    glue_bridge,
    glue_interface,
    interface_from_vertices,
    new_graph,
)
from .laplacian import (
    IntMatrix,
    even_laplacian,
    even_laplacian_bridge_glued,
    even_laplacian_interface_glued,
    odd_laplacian,
    odd_laplacian_bridge_glued,
    odd_laplacian_interface_glued,
)
from .poly import IntPoly, charpoly, minor_charpoly, multi_bridge_charpoly, vertex_interface_charpoly
from .quantum import EvolutionParams, evolve, wave_from_pairs, wave_to_pairs
from .spectral import (
    DEFAULT_TOL,
    betti_numbers,
    cheeger_constant,
    eigenvalues_sym,
    fiedler_value,
    spanning_tree_count,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VERIFY = 4
EXIT_SIZE = 5
EXIT_NUMERIC = 6


class ParseError(Exception):
    pass


class VerifyMismatch(Exception):
    pass


@dataclass(frozen=True)
class Fixed:
    """A number rendered verbatim, so decimal output has a fixed number of places."""

    text: str


# -- document I/O -------------------------------------------------------------


def _render(value) -> str:
    if isinstance(value, Fixed):
        return value.text
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_render(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    return json.dumps(value)


def render_document(doc: dict, fmt: str) -> str:
    if fmt == "plain":
        return "\n".join(f"{k}: {_render(v)}" for k, v in doc.items())
    return _render(doc)


def parse_document(text: str) -> dict | list:
    """Parse a JSON document or the ``name: value`` line form."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        if text.lstrip()[:1] in ("{", "["):
            raise ParseError(f"malformed JSON: {exc}") from None
    doc = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        key, sep, raw = line.partition(":")
        if not sep or not key.strip():
            raise ParseError(f"line {lineno}: expected 'name: value'")
        try:
            doc[key.strip()] = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: {exc.msg}") from None
    if not doc:
        raise ParseError("empty document")
    return doc


def read_document(path: str) -> dict | list:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer")
    return value


def _int_pairs(value, what: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be an array of pairs")
    out = []
    for item in value:
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"each entry of {what} must be a 2-element array")
        out.append((_int(item[0], what), _int(item[1], what)))
    return out


def graph_from_document(doc) -> OrientedGraph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("graph document needs a 'vertices' field")
    n = _int(doc["vertices"], "vertices")
    edges = _int_pairs(doc.get("edges", []), "edges")
    return new_graph(n, edges)


def glue_from_document(doc, g1: OrientedGraph, g2: OrientedGraph) -> InterfaceSpec | BridgeSpec:
    if not isinstance(doc, dict) or doc.get("mode") not in ("interface", "bridge"):
        raise ParseError("glue document needs mode 'interface' or 'bridge'")
    if doc["mode"] == "bridge":
        spec = BridgeSpec(tuple(_int_pairs(doc.get("pairs", []), "pairs")))
        spec.validate(g1, g2)
        return spec
    vpairs = _int_pairs(doc.get("vertices", []), "vertices")
    v1 = tuple(a for a, _ in vpairs)
    v2 = tuple(b for _, b in vpairs)
    if "edges" not in doc:
        return interface_from_vertices(g1, g2, v1, v2)
    epairs = _int_pairs(doc["edges"], "edges")
    spec = InterfaceSpec(v1, v2, tuple(a for a, _ in epairs), tuple(b for _, b in epairs))
    spec.validate(g1, g2)
    return spec


def wave_from_document(doc) -> np.ndarray:
    if isinstance(doc, dict):
        if "psi" not in doc:
            raise ParseError("wave-function document needs a 'psi' field")
        doc = doc["psi"]
    if not isinstance(doc, list):
        raise ParseError("psi must be an array of [re, im] pairs")
    for pair in doc:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError("psi must be an array of [re, im] number pairs")
    return wave_from_pairs(doc)


def poly_document(p: IntPoly) -> dict:
    return {"coefficients": p.to_list()}


def spectrum_document(m: IntMatrix, tol: float, zero_count: int) -> dict:
    return eigenvalues_sym(m, tol, zero_count).to_dict()


# -- commands -----------------------------------------------------------------


def cmd_laplacian(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    lap = even_laplacian(g) if args.which == "even" else odd_laplacian(g)
    return lap.to_dict()


def _glued_matrix(g1, g2, spec, which: str) -> IntMatrix:
    """Laplacian of the glued graph via the entrywise gluing formulas."""
    if isinstance(spec, BridgeSpec):
        if which == "even":
            return even_laplacian_bridge_glued(even_laplacian(g1), even_laplacian(g2), spec)
        return odd_laplacian_bridge_glued(g1, g2, spec)
    if which == "even":
        h1, h2, cspec = canonical_interface_inputs(g1, g2, spec)
        n_glued = g1.n_vertices + g2.n_vertices - spec.q
        return even_laplacian_interface_glued(
            even_laplacian(h1), even_laplacian(h2), h1.n_vertices, n_glued, cspec.q
        )
    return odd_laplacian_interface_glued(g1, g2, spec)


def _glued_charpoly(g1, g2, spec) -> IntPoly:
    if isinstance(spec, BridgeSpec):
        return multi_bridge_charpoly(g1, g2, spec)
    if spec.q == 1 and spec.r == 0:
        l1, l2 = even_laplacian(g1), even_laplacian(g2)
        a, c = spec.vertices_1[0], spec.vertices_2[0]
        return vertex_interface_charpoly(charpoly(l1), minor_charpoly(l1, a), charpoly(l2), minor_charpoly(l2, c))
    # no compact formula exists for larger interfaces; compute from the glued Laplacian
    return charpoly(_glued_matrix(g1, g2, spec, "even"))


def _verify(label: str, formula, direct) -> None:
    if formula != direct:
        raise VerifyMismatch(f"{label}: gluing formula disagrees with direct computation")


def cmd_glue(args) -> dict:
    g1 = graph_from_document(read_document(args.graph1))
    g2 = graph_from_document(read_document(args.graph2))
    spec = glue_from_document(read_document(args.glue), g1, g2)
    glued = (glue_bridge if isinstance(spec, BridgeSpec) else glue_interface)(g1, g2, spec).graph

    if args.emit == "graph":
        return glued.to_dict()
    if args.emit in ("even", "odd"):
        m = _glued_matrix(g1, g2, spec, args.emit)
        if args.verify:
            direct = even_laplacian(glued) if args.emit == "even" else odd_laplacian(glued)
            _verify(f"{args.emit} Laplacian", m, direct)
        return m.to_dict()
    p = _glued_charpoly(g1, g2, spec)
    if args.verify:
        _verify("characteristic polynomial", p, charpoly(even_laplacian(glued)))
    if args.emit == "charpoly":
        return poly_document(p)
    m = _glued_matrix(g1, g2, spec, "even")
    if args.verify:
        _verify("even Laplacian", m, even_laplacian(glued))
    return spectrum_document(m, args.tol, betti_numbers(glued)[0])


def cmd_spectrum(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    b0, b1 = betti_numbers(g)
    if args.which == "even":
        return spectrum_document(even_laplacian(g), args.tol, b0)
    return spectrum_document(odd_laplacian(g), args.tol, b1)


def cmd_fiedler(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    return {"fiedler": Fixed(f"{fiedler_value(g, args.tol):.12f}")}


def cmd_trees(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    return {"trees": spanning_tree_count(g)}


def cmd_cheeger(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    h = cheeger_constant(g)
    return {"cheeger": str(h), "numerator": h.numerator, "denominator": h.denominator}


def cmd_evolve(args) -> dict:
    g = graph_from_document(read_document(args.graph))
    psi0 = wave_from_document(read_document(args.psi))
    try:
        params = EvolutionParams(args.coeff, args.dt)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    psi = evolve(psi0, g, params)
    return {
        "psi": wave_to_pairs(psi),
        "norm": float(np.linalg.norm(psi)),
        "input_norm": float(np.linalg.norm(psi0)),
    }


def cmd_check(args) -> tuple[dict | str, int]:
    keys = args.only or [k for k, _, _ in checks.CHECKS]
    known = {k for k, _, _ in checks.CHECKS}
    unknown = [k for k in keys if k not in known]
    if unknown:
        raise ParseError(f"unknown criterion {', '.join(unknown)}; known: {', '.join(sorted(known))}")
    results = [checks.run_check(k, args.seed) for k in keys]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED
    if args.format == "plain":
        return "\n".join(r.line() for r in results), code
    doc = {
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "results": [
            {"criterion": r.key, "title": r.title, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
    }
    return doc, code


# -- argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "plain"), default="json")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigensolver tolerance, relative to ||M||_F")

    parser = _Parser(prog="graphglue", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("laplacian", parents=[common], help="even or odd Laplacian of a graph")
    p.add_argument("graph")
    p.add_argument("--which", choices=("even", "odd"), default="even")
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("glue", parents=[common], help="glue two graphs along an interface or by bridges")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("glue")
    p.add_argument("--emit", choices=("graph", "even", "odd", "charpoly", "spectrum"), default="graph")
    p.add_argument("--verify", action="store_true", help="also compute the result directly and compare")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("spectrum", parents=[common], help="Laplacian eigenvalues")
    p.add_argument("graph")
    p.add_argument("--which", choices=("even", "odd"), default="even")
    p.set_defaults(func=cmd_spectrum)

    for name, func, text in (
        ("fiedler", cmd_fiedler, "smallest nonzero even-Laplacian eigenvalue"),
        ("trees", cmd_trees, "number of spanning trees"),
        ("cheeger", cmd_cheeger, "Cheeger constant by exhaustive search"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("graph")
        p.set_defaults(func=func)

    p = sub.add_parser("evolve", parents=[common], help="evolve a wave function on a graph")
    p.add_argument("graph")
    p.add_argument("psi")
    p.add_argument("--coeff", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=0.0)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("check", parents=[common], help="run the self-verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="+", metavar="KEY", help="run only these criteria")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        text = result if isinstance(result, str) else render_document(result, args.format)
        sys.stdout.write(text + "\n")
        return code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerifyMismatch as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except TooLarge as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GraphGlueError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
