"""Command-line front end: ``gkm <command> [options]``.

Graph-consuming commands read a JSON document from ``--input`` (default
stdin), typically produced by ``gkm zoo``.  Exit codes: 0 success,
1 validation failure, 2 hypothesis violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import zoo
from .axial import axial_from_embedding, span_reduce, validate_axial
from .cross_section import build_cross_section, surgery_check
from .errors import GKMError, HypothesisError, MismatchError, ValidationError
from .graph import Subgraph, all_closed_geodesics, holonomy_group, validate_connection
from .interpolation import (fermionic_face_scheme, fermionic_formula, formula_71,
                            geodesic_subgraph_scheme, hdim_bosonic, hdim_fermionic,
                            holonomy_scheme, kn_decompose)
from .io import Document, dumps, from_fixture, jsonable, loads
from .morse import betti, betti_invariance_check, morse_function
from .polytope import (betti_to_faces_check, deform, fvector_from_betti, redraw_basis,
                       skeleton)
from .render import plane_points, svg
from .scalars import to_scalar

EXIT_VALIDATION = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vector(text: str | None):
    if text is None:
        return None
    try:
        return tuple(to_scalar(x.strip()) for x in text.split(","))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from None


def _ints(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _poly_json(p: dict) -> list:
    return [[list(k), v] for k, v in sorted(p.items()) if v]


def _require(doc: Document, *blocks: str) -> None:
    for b in blocks:
        if getattr(doc, b) is None:
            if b == "axial" and doc.embedding is not None:
                doc.axial = axial_from_embedding(doc.graph, doc.embedding)
                continue
            raise ValidationError(f"input has no {b} block", b)


def _axial(doc: Document, reduce: bool):
    a = doc.axial
    return span_reduce(a)[0] if reduce else a


# commands


def cmd_zoo(args, doc):
    params = {}
    for key in ("n", "k"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.exact:
        params["exact"] = True
    try:
        fx = zoo.make(args.name, **params)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    return from_fixture(fx)


def cmd_validate(args, doc):
    g = doc.graph
    out = {"valid": True, "vertices": g.vertex_count, "edges": g.edge_count // 2}
    if doc.connection is not None:
        for comp in g.components():
            vals = {g.valence(v) for v in comp}
            if len(vals) != 1:
                raise ValidationError("connection on a non-regular component", "regular component", comp)
        viol = validate_connection(g, doc.connection)
        if viol is not None:
            raise ValidationError(f"connection violates {viol.axiom} at edge {viol.edge}",
                                  viol.axiom, viol.edge)
        out["connection"] = "ok"
    if doc.axial is not None:
        if doc.connection is None:
            raise ValidationError("axial block needs a connection", "connection")
        bad = validate_axial(g, doc.connection, doc.axial)
        if bad is not None:
            raise ValidationError(f"axial function violates {bad[0]}", bad[0], bad[1])
        out["axial"] = "ok"
    return out


def cmd_geodesics(args, doc):
    _require(doc, "connection")
    g = doc.graph
    geos = all_closed_geodesics(g, doc.connection)
    return {"count": len(geos),
            "geodesics": [{"edges": list(x.edges), "vertices": [g.tail(e) for e in x.edges]}
                          for x in geos]}


def cmd_holonomy(args, doc):
    _require(doc, "connection")
    G = holonomy_group(doc.graph, doc.connection, args.base)
    return {"base": args.base, "order": G.order, "generators": [list(p) for p in G.generators]}


def cmd_betti(args, doc):
    _require(doc, "axial")
    a = _axial(doc, args.reduce)
    b = betti(doc.graph, doc.connection, a, _vector(args.xi))
    out = {"betti": list(b.betti), "invariant": b.invariant, "xi": list(b.direction.xi)}
    if not b.invariant:
        rep = betti_invariance_check(doc.graph, doc.connection, a)
        out["chambers"] = sorted({tuple(h) for h in rep.histograms})
    return out


def cmd_morse(args, doc):
    _require(doc, "axial")
    f = morse_function(doc.graph, doc.axial, _vector(args.xi))
    return {"values": list(f.values), "xi": list(f.xi)}


def cmd_hdim(args, doc):
    _require(doc, "axial")
    a = _axial(doc, args.reduce)
    g = doc.graph
    solve = hdim_fermionic if args.fermionic else hdim_bosonic
    dim, basis = solve(g, a, args.r, basis=args.basis)
    out = {"r": args.r, "n": a.dim, "dim": dim, "fermionic": args.fermionic}
    b = betti(g, doc.connection, a)
    if b.invariant:
        out["formula"] = (fermionic_formula if args.fermionic else formula_71)(a.dim, args.r, b)
    else:
        out["formula"] = None
    if args.basis:
        out["basis"] = [[list(v) for v in s.values] for s in basis]
    return out


def cmd_decompose_kn(args, doc):
    _require(doc, "axial", "embedding")
    g, a = doc.graph, doc.axial
    _, basis = hdim_bosonic(g, a, args.r)
    rng = random.Random(args.seed)
    if args.random:
        # one random combination of the basis instead of every basis element
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in basis]
        vals = tuple(tuple(sum((c * s.values[v][i] for c, s in zip(coeffs, basis)), Fraction(0))
                           for i in range(len(basis[0].values[v])))
                     for v in range(g.vertex_count))
        basis = [type(basis[0])(args.r, a.dim, vals)] if basis else []
    out = []
    for s in basis:
        ps = kn_decompose(g, doc.embedding, s)
        out.append([_poly_json(p) for p in ps])
    return {"r": args.r, "count": len(out), "decompositions": out}


def cmd_scheme(args, doc):
    _require(doc, "connection", "axial")
    g, c, a = doc.graph, doc.connection, doc.axial
    if args.kind == "holonomy":
        exps = _ints(args.exponents)
        if exps is None:
            raise UsageError("--exponents is required for holonomy schemes")
        s = holonomy_scheme(g, c, a, {tuple(exps): Fraction(1)})
    else:
        verts = _ints(args.vertices)
        if not verts:
            raise UsageError("--vertices is required")
        if args.kind == "geodesic":
            s = geodesic_subgraph_scheme(g, c, a, Subgraph.induced(g, verts))
        else:
            s = fermionic_face_scheme(g, c, a, verts)
            return {"kind": "face", "degree": s.degree, "values": [list(v) for v in s.values]}
    return {"kind": args.kind, "degree": s.degree, "polynomials": [_poly_json(s.poly(v))
                                                                    for v in range(g.vertex_count)]}


def cmd_cross_section(args, doc):
    _require(doc, "connection", "axial")
    f = morse_function(doc.graph, doc.axial, _vector(args.xi))
    sec = build_cross_section(doc.graph, doc.connection, doc.axial, f, to_scalar(args.level))
    return Document(sec.graph, sec.up, sec.delta, name="cross-section",
                    extra={"level": sec.level, "crossing_edges": list(sec.edges),
                           "down_connection": {str(e): sorted([x, y] for x, y in m.items())
                                               for e, m in enumerate(sec.down.maps)}})


def cmd_surgery(args, doc):
    _require(doc, "connection", "axial")
    g, c, a = doc.graph, doc.connection, doc.axial
    f = morse_function(g, a, _vector(args.xi))
    verts = [args.vertex] if args.vertex is not None else range(g.vertex_count)
    reps = [surgery_check(g, c, a, f, p, strict=False) for p in verts]
    out = {"ok": all(r.ok for r in reps),
           "reports": [{"vertex": r.vertex, "index": r.index, "ok": r.ok,
                        "deleted_complete": r.deleted_complete, "deleted_geodesic": r.deleted_geodesic,
                        "inserted_complete": r.inserted_complete,
                        "inserted_geodesic": r.inserted_geodesic,
                        "remaining_match": r.remaining_match} for r in reps]}
    if not out["ok"]:
        raise MismatchError("surgery check failed", out, None)
    return out


def cmd_fvector(args, doc):
    if args.betti is not None:
        b = _ints(args.betti)
        n = args.n if args.n is not None else len(b) - 1
        return {"n": n, "betti": b, "fvector": list(fvector_from_betti(n, b))}
    _require(doc, "axial")
    sk = skeleton(doc.graph, doc.connection, doc.axial, doc.embedding)
    rep = betti_to_faces_check(sk, strict=False)
    return {"n": sk.n, "betti": list(rep.betti), "fvector": list(rep.from_betti),
            "faces": list(rep.from_faces), "match": rep.ok}


def _element(space, which):
    if which is not None:
        if not 0 <= which < space.dim:
            raise UsageError(f"--element must be below {space.dim}")
        return which
    others = [i for i, t in enumerate(space.tags) if t == "other"]
    return others[0] if others else space.dim - 1


def cmd_redraw(args, doc):
    _require(doc, "axial")
    g, a = doc.graph, doc.axial
    space = redraw_basis(g, a, doc.embedding)
    out = {"dim": space.dim, "ambient_dim": space.ambient_dim, "tags": list(space.tags),
           "hdim": hdim_bosonic(g, span_reduce(a)[0], 1, basis=False)[0]}
    if args.basis:
        out["basis"] = [[list(p) for p in space.ambient(i)] for i in range(space.dim)]
    if args.svg:
        emb = doc.embedding
        if emb is None:
            raise ValidationError("redraw --svg needs an embedding", "embedding")
        i = _element(space, args.element)
        moved = deform(emb, space.ambient(i), to_scalar(args.eps), g)
        text = svg(g, plane_points(g, a, emb), plane_points(g, a, moved), title=doc.name)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(text)
        out["svg"] = args.svg
        out["element"] = i
    return out


def cmd_render(args, doc):
    _require(doc, "axial")
    return svg(doc.graph, plane_points(doc.graph, doc.axial, doc.embedding), title=doc.name)


COMMANDS = {
    "zoo": cmd_zoo,
    "validate": cmd_validate,
    "geodesics": cmd_geodesics,
    "holonomy": cmd_holonomy,
    "betti": cmd_betti,
    "morse": cmd_morse,
    "hdim": cmd_hdim,
    "decompose-kn": cmd_decompose_kn,
    "scheme": cmd_scheme,
    "cross-section": cmd_cross_section,
    "surgery-check": cmd_surgery,
    "fvector": cmd_fvector,
    "redraw": cmd_redraw,
    "render": cmd_render,
}

NO_INPUT = {"zoo"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON document (default: stdin)")
    common.add_argument("--format", choices=("json", "text", "svg"), default="json")
    common.add_argument("--seed", type=int, default=0)
    # global flags live on every subcommand so they may follow it
    p = _Parser(prog="gkm", description="Exact computations on graphs with connections.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("zoo", parents=[common], help="emit a named example graph")
    s.add_argument("name", choices=sorted(n.replace("_", "-") for n in zoo.NAMES) + sorted(zoo.NAMES),
                   metavar="name")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--exact", action="store_true")

    sub.add_parser("validate", parents=[common], help="check graph, connection and axial axioms")
    sub.add_parser("geodesics", parents=[common], help="list closed geodesics")
    s = sub.add_parser("holonomy", parents=[common], help="holonomy group at a base vertex")
    s.add_argument("--base", type=int, default=0)
    for name, hlp in (("betti", "index histogram and invariance"), ("morse", "compatible Morse function")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--xi", help="direction as comma separated p/q values")
        if name == "betti":
            s.add_argument("--reduce", action="store_true", help="span-reduce first")
    s = sub.add_parser("hdim", parents=[common], help="dimension of the degree-r scheme space")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--fermionic", action="store_true")
    s.add_argument("--reduce", action="store_true")
    s.add_argument("--basis", action="store_true")
    s = sub.add_parser("decompose-kn", parents=[common], help="split schemes on K_n into Newton terms")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--random", action="store_true", help="decompose one seeded random scheme")
    s = sub.add_parser("scheme", parents=[common], help="build a generating scheme")
    s.add_argument("--kind", choices=("holonomy", "geodesic", "face"), required=True)
    s.add_argument("--exponents", help="monomial exponents in the star frame")
    s.add_argument("--vertices", help="vertex list of the subgraph or face")
    s = sub.add_parser("cross-section", parents=[common], help="section graph at a regular level")
    s.add_argument("--level", required=True)
    s.add_argument("--xi")
    s = sub.add_parser("surgery-check", parents=[common], help="verify section surgery at vertices")
    s.add_argument("--vertex", type=int)
    s.add_argument("--xi")
    s = sub.add_parser("fvector", parents=[common], help="face counts from Betti numbers")
    s.add_argument("--betti", help="explicit Betti vector; skips the input graph")
    s.add_argument("--n", type=int)
    s = sub.add_parser("redraw", parents=[common], help="parallel redrawing space")
    s.add_argument("--basis", action="store_true")
    s.add_argument("--svg", help="write a deformation overlay to this file")
    s.add_argument("--eps", default="1/10")
    s.add_argument("--element", type=int)
    sub.add_parser("render", parents=[common], help="SVG of the plane projection")
    return p


def _text(data) -> str:
    if isinstance(data, dict):
        return "\n".join(f"{k}: {dumps(v) if isinstance(v, (dict, list)) else jsonable(v)}"
                         for k, v in sorted(data.items())) + "\n"
    return str(data)


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        doc = None
        if args.command not in NO_INPUT and not (args.command == "fvector" and args.betti):
            if args.input and args.input != "-":
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            else:
                text = stdin.read()
            doc = loads(text)
        result = COMMANDS[args.command](args, doc)
    except UsageError as exc:
        print(f"gkm: usage: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gkm: {exc}", file=stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"gkm: hypothesis violated ({exc.hypothesis}): {exc}", file=stderr)
        return EXIT_HYPOTHESIS
    except (ValidationError, MismatchError) as exc:
        axiom = getattr(exc, "axiom", None)
        print(f"gkm: invalid ({axiom}): {exc}" if axiom else f"gkm: {exc}", file=stderr)
        return EXIT_VALIDATION
    except GKMError as exc:
        print(f"gkm: {exc}", file=stderr)
        return EXIT_VALIDATION
    if isinstance(result, str):
        stdout.write(result)
    elif args.format == "text":
        stdout.write(_text(result.to_json() if isinstance(result, Document) else result))
    else:
        stdout.write(dumps(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
