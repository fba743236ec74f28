"""Command line front end: ``coxcomb <command> [fan.json | --example name:params]``.

Exit status is 0 on success, 1 for malformed input and 2 when a hypothesis
of the requested construction fails (for instance an incomplete quotient).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import autreport, coxring, fan as fanmod, lattice, roots, symmetry
from .errors import CoxcombError, HypothesisFailure, MalformedInput, ParseError
from .exactlin import Subspace
from .scalar import ComplexScalar, FieldContext, Scalar

COMMANDS = ("validate", "complete", "rationalize", "pushforward", "quotient", "reduce", "lattice",
            "grading", "coxdim", "roots", "symmetry", "aut", "equivariant", "toric", "moment-angle",
            "example")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxcomb", description="Exact computations on generalized fans.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="fan JSON file ('-' for stdin)")
    p.add_argument("--example", help="build the fan from an example, e.g. projective_space:2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--field-d", type=int, default=None,
                   help="quadratic field for parsing --subspace/--matrix entries")
    p.add_argument("--subspace", help="vectors: comma-separated entries, ';' between vectors")
    p.add_argument("--space", choices=("auto", "ambient", "development"), default="auto",
                   help="where --subspace lives for 'equivariant'")
    p.add_argument("--matrix", help="linear map for 'pushforward': rows separated by ';'")
    p.add_argument("--alpha", help="degree for 'coxdim': integers, one per label")
    p.add_argument("--structure", help="complex structure rows for 'moment-angle', entries re:im")
    return p


def _rows(text: str, parse, what: str):
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        rows.append([parse(x.strip()) for x in chunk.split(",")])
    if not rows:
        raise ParseError(f"empty {what}")
    return rows


def _load(args):
    if (args.input is None) == (args.example is None):
        raise ParseError("give exactly one of an input file or --example")
    if args.example:
        return fanmod.example_fan(args.example)
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc
    return fanmod.fan_from_json(text)


def _field(args, fan):
    d = args.field_d if args.field_d is not None else fan.field_d
    FieldContext(d)
    if args.field_d is not None and fan.field_d and args.field_d != fan.field_d:
        raise ParseError(f"--field-d {args.field_d} does not match the fan's field {fan.field_d}")
    return d


def _scalar_parser(d):
    """Entries must lie in Q(sqrt d); over a rational fan any one square root may appear."""

    def parse(x):
        return Scalar.parse(x, d if d > 1 else None)

    return parse


def _jsonable(x):
    if isinstance(x, (Fraction, Scalar, ComplexScalar)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(_jsonable(data), indent=2))
    else:
        print(text)


def _fan_text(f) -> str:
    lines = [f"labels: {' '.join(f.labels)}", f"ambient dimension: {f.ambient_dim}",
             f"field: Q(sqrt {f.field_d})" if f.field_d > 1 else "field: Q"]
    for s, r in zip(f.labels, f.rays):
        lines.append(f"  rho({s}) = ({', '.join(map(str, r))})")
    lines.append("maximal faces: " + " ".join("{" + ",".join(f.sorted_face(m)) + "}" for m in f.maximal_faces))
    if f.ghosts:
        lines.append(f"ghosts: {' '.join(f.ghosts)}")
    if f.provenance:
        lines.append("provenance: " + " -> ".join(f.provenance))
    return "\n".join(lines)


def _fan_payload(f) -> dict:
    out = fanmod.fan_to_json(f)
    out["provenance"] = list(f.provenance)
    return out


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except HypothesisFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (MalformedInput, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except CoxcombError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "example":
        if not args.example:
            raise ParseError("'example' needs --example name:params")
        f = fanmod.example_fan(args.example)
        print(json.dumps(fanmod.fan_to_json(f), indent=2))
        return 0

    f = _load(args)
    d = _field(args, f)

    if cmd == "validate":
        v = fanmod.validate(f)
        _emit(args, {"valid": True, "labels": len(f.labels), "faces": v.n_faces,
                     "ambient_dim": f.ambient_dim, "ghosts": list(v.ghosts)},
              f"valid fan: {len(f.labels)} labels, {v.n_faces} faces, dimension {f.ambient_dim}"
              + (f", ghosts {' '.join(v.ghosts)}" if v.ghosts else ""))
    elif cmd == "complete":
        c = fanmod.is_complete(f)
        text = "complete" if c else f"not complete: ({', '.join(map(str, c.witness))}) lies in no cone"
        _emit(args, {"complete": c.complete, "witness": c.witness, "chambers": c.n_chambers}, text)
    elif cmd == "rationalize":
        r = fanmod.rationalize(f)
        _emit(args, {"fan": _fan_payload(r.fan), "kernel_closure": [list(v) for v in r.kernel_closure.basis],
                     "projection": [list(row) for row in r.projection]},
              _fan_text(r.fan) + f"\nkernel closure dimension: {r.kernel_closure.dim}")
    elif cmd == "pushforward":
        if not args.matrix:
            raise ParseError("'pushforward' needs --matrix")
        A = _rows(args.matrix, _scalar_parser(d), "matrix")
        g = fanmod.pushforward(f, A)
        _emit(args, _fan_payload(g), _fan_text(g))
    elif cmd == "quotient":
        if not args.subspace:
            raise ParseError("'quotient' needs --subspace")
        L = Subspace.from_vectors(_rows(args.subspace, _scalar_parser(d), "subspace"), f.ambient_dim)
        g = fanmod.quotient_fan(f, L)
        _emit(args, _fan_payload(g), _fan_text(g))
    elif cmd == "reduce":
        red = fanmod.reduce_ghosts(f)
        lines = [_fan_text(red.reduced)]
        for gh in red.ghosts:
            expr = " + ".join(f"{c}*rho({s})" for s, c in red.expressions[gh].items()) or "0"
            lines.append(f"rho({gh}) = {expr}")
            if red.integer_expressions.get(gh) is not None:
                ie = " + ".join(f"{c}*rho({s})" for s, c in red.integer_expressions[gh].items()) or "0"
                lines.append(f"  integer form: rho({gh}) = {ie}")
        _emit(args, {"fan": _fan_payload(red.reduced), "ghosts": list(red.ghosts),
                     "expressions": red.expressions, "integer_expressions": red.integer_expressions},
              "\n".join(lines))
    elif cmd == "lattice":
        lat = lattice.fan_lattice(f)
        dual = lattice.dual_fan_map(f)
        lines = [f"rank: {lat.rank}" + (" (after rationalization)" if lat.rationalized else "")]
        lines += [f"  b{j} = ({', '.join(map(str, b))})" for j, b in enumerate(lat.basis)]
        lines += [f"  rho({s}) = {list(c)}" for s, c in zip(f.labels, lat.coords)]
        lines.append("dual map rows: " + "; ".join(" ".join(map(str, r)) for r in dual))
        _emit(args, {"rank": lat.rank, "basis": [list(b) for b in lat.basis], "rationalized": lat.rationalized,
                     "coords": {s: list(c) for s, c in zip(f.labels, lat.coords)},
                     "dual_map": [list(r) for r in dual]}, "\n".join(lines))
    elif cmd == "grading":
        g = lattice.grading_group(f)
        lines = [f"L = {g.describe()}"]
        lines += [f"  deg {s} = {list(v)}" for s, v in g.degrees.items()]
        lines.append("classes: " + " | ".join(" ".join(c) for c in g.classes))
        _emit(args, {"invariant_factors": g.invariant_factors, "free_rank": g.free_rank,
                     "degrees": {s: list(v) for s, v in g.degrees.items()},
                     "classes": [list(c) for c in g.classes]}, "\n".join(lines))
    elif cmd == "coxdim":
        if args.alpha:
            alpha = [int(x) for x in args.alpha.split(",")]
            n = coxring.graded_dimension(f, alpha)
            _emit(args, {"alpha": alpha, "dimension": n}, f"dim R_alpha = {n}")
        else:
            rows = []
            for i, cls in enumerate(lattice.grading_group(f).classes):
                b = coxring.monomial_basis(f, i)
                rows.append({"class": list(cls), "size": len(cls), "dimension": b.dim,
                             "decomposable": len(b.decomposables)})
            text = "\n".join(f"{' '.join(r['class'])}: |S_i| = {r['size']}, dim = {r['dimension']}, "
                             f"decomposable = {r['decomposable']}" for r in rows)
            _emit(args, {"classes": rows}, text)
    elif cmd == "roots":
        rs = roots.demazure_roots(f)
        text = "\n".join(f"{str(list(r.covector)):>16}  at {r.label:<6} "
                         f"{'semisimple' if r.semisimple else 'unipotent':<10}  "
                         f"{'geometric' if r.geometric else 'not geometric'}" for r in rs)
        _emit(args, {"roots": [{"covector": list(r.covector), "label": r.label, "semisimple": r.semisimple,
                                "geometric": r.geometric} for r in rs]}, text or "no roots")
    elif cmd == "symmetry":
        G = symmetry.symmetry_groups(f)
        lines = [f"|S| = {G.order}", f"|I| = {G.inertia_order}", f"|ES| = {G.quotient_order}",
                 "S generators: " + (", ".join(map(str, G.generators)) or "none"),
                 "ES generators: " + (", ".join(map(str, G.quotient_generators)) or "none")]
        if G.restricted_to_span:
            lines.append("note: rays do not span the ambient space; computed on their span")
        _emit(args, {"order": G.order, "inertia_order": G.inertia_order, "quotient_order": G.quotient_order,
                     "generators": [str(g) for g in G.generators],
                     "quotient_generators": [str(g) for g in G.quotient_generators],
                     "restricted_to_span": G.restricted_to_span}, "\n".join(lines))
    elif cmd in ("aut", "toric", "equivariant", "moment-angle"):
        if cmd == "aut":
            rep = autreport.tilde_aut_report(f)
        elif cmd == "toric":
            rep = autreport.toric_aut_report(f)
        elif cmd == "equivariant":
            vecs = _rows(args.subspace, _scalar_parser(d), "subspace") if args.subspace else []
            rep = autreport.equivariant_report(f, vecs, space=args.space)
        else:
            if args.structure:
                rows = _rows(args.structure, ComplexScalar.parse, "structure")
            elif args.example and fanmod.example_structure(args.example) is not None:
                rows = fanmod.example_structure(args.example)
            else:
                raise ParseError("'moment-angle' needs --structure (or an example that carries one)")
            rep = autreport.moment_angle_report(f, rows)
        _emit(args, rep.to_dict(), rep.format_text())
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
