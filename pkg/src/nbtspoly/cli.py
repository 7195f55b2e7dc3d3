"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch in ``report``, 2 usage error,
3 input parse error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from . import correlations as cr
from . import export, reproduce
from .geometry import CertificateKind

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PARSE = 3


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


def _q(args):
    if args.q is None:
        return None
    try:
        return cat.parse_q(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _polytope(name: str, q):
    if name == cat.SET_Q and q is None:
        raise UsageError("set-q needs --q")
    if name not in cat.POLYTOPE_NAMES:
        path = Path(name)
        if path.suffix == ".json" and path.exists():
            try:
                return export.load_polytope(path.read_text())
            except export.PolytopeFileError as exc:
                raise ParseError(f"{path}: {exc}") from None
        raise UsageError(f"unknown polytope {name!r}; expected one of {', '.join(cat.POLYTOPE_NAMES)}")
    return cat.build(name, q)


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_point(p) -> str:
    return "(" + ", ".join(str(v) for v in p) + ")"


def _read_correlation(path: str) -> cr.Correlation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return cr.loads_correlation(text)
    except cr.CorrelationParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _resolve_target(target: str) -> tuple[str, cr.Correlation]:
    if target.startswith("coords:"):
        try:
            return target, cr.from_coords([Fraction(v) for v in target[len("coords:"):].split(",")])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{target}: {exc}") from None
    if Path(target).exists():
        return target, _read_correlation(target)
    try:
        return target, cr.named_correlation(target)
    except ValueError:
        raise UsageError(f"{target!r} is neither a file, a coords: list nor a vertex name "
                         "(det-abmn, gyni-ab, pr-gde, lin-a, pr-box, uniform)") from None


# ---------------------------------------------------------------- commands

def cmd_vertices(args) -> int:
    p = _polytope(args.polytope, _q(args))
    if args.format == "json":
        if not isinstance(p, cat.NamedPolytope):
            raise UsageError("json export needs a catalog polytope")
        _emit(export.dumps(export.polytope_json(p)), args)
        return EXIT_OK
    lines = [f"# {p.title}: {len(p.vertices)} vertices"
             + (f", dimension {p.dimension}" if isinstance(p, cat.NamedPolytope) else ""),
             "# coordinates: " + ", ".join(cr.COORD_NAMES)]
    width = max(len(lab) for lab in p.labels)
    for lab, v in sorted(p.labelled(), key=lambda t: t[1]):
        lines.append(f"{lab:<{width}}  {_fmt_point(v)}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def cmd_facets(args) -> int:
    p = _polytope(args.polytope, _q(args))
    if not isinstance(p, cat.NamedPolytope):
        raise UsageError("facets needs a catalog polytope")
    if args.format == "json":
        _emit(export.dumps(export.polytope_json(p)), args)
        return EXIT_OK
    h = p.h_description
    lines = [f"# {p.title}: {len(h.inequalities)} facets, {len(h.equalities)} equalities, dimension {p.dimension}",
             "# variables x0..x7 = " + ", ".join(cr.COORD_NAMES)]
    lines += [str(e) for e in sorted(h.equalities, key=lambda i: i.key())]
    lines += [str(f) for f in sorted(h.inequalities, key=lambda i: i.key())]
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def cmd_check(args) -> int:
    c = _read_correlation(args.file)
    try:
        ordering = cr.TimeOrdering.parse(args.ordering)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = cr.nbts_check(c, ordering)
    if args.format == "json":
        doc = {"ordering": ordering.value, "passed": res.passed,
               "violations": [{"equality": v.equality, "lhs": str(v.lhs), "rhs": str(v.rhs)}
                              for v in res.violations]}
        _emit(export.dumps(doc), args)
    else:
        lines = [f"{ordering.value}: {'pass' if res.passed else 'fail'}"]
        lines += [f"  {v}" for v in res.violations]
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _certificate_json(cert, hull_labels) -> dict:
    if cert.kind is CertificateKind.CONVEX_WEIGHTS:
        return {"kind": cert.kind.value,
                "weights": {lab: str(w) for lab, w in zip(hull_labels, cert.weights) if w != 0}}
    return {"kind": cert.kind.value, "hyperplane": export.inequality_json(cert.hyperplane)}


def cmd_membership(args) -> int:
    name, c = _resolve_target(args.target)
    poly = _polytope(args.polytope, _q(args))
    weak = cr.nbts_check(c, cr.TimeOrdering.WEAK)
    if not weak.passed:
        # every catalog polytope sits inside the weak-NBTS set
        doc = {"target": name, "polytope": poly.title, "inside": False,
               "certificate": {"kind": "weak-nbts-violation", "violations": [str(v) for v in weak.violations]}}
        text = export.dumps(doc) if args.format == "json" else (
            f"{name} vs {poly.title}: outside\n" + "".join(f"  violates {v}\n" for v in weak.violations))
        _emit(text, args)
        return EXIT_OK
    if isinstance(poly, cat.NamedPolytope):
        rep = cat.membership_point(cr.to_coords(c), poly)
    else:
        rep = cat.membership_point(cr.to_coords(c), cat.NamedPolytope(
            poly.title, poly.v_description, poly.labels, cat.PolytopeH((), (), poly.v_description.ambient_dim),
            -1))
    if args.format == "json":
        doc = {"target": name, "polytope": rep.polytope, "inside": rep.inside, "verified": rep.verified,
               "certificate": _certificate_json(rep.certificate, poly.labels),
               "violated_facets": [export.inequality_json(f) for f in rep.violated_facets]}
        _emit(export.dumps(doc), args)
        return EXIT_OK
    lines = [f"{name} vs {rep.polytope}: {'inside' if rep.inside else 'outside'}"
             f" (certificate {'verified' if rep.verified else 'NOT verified'})"]
    if rep.inside:
        lines.append("  convex weights:")
        for lab, w in zip(poly.labels, rep.certificate.weights):
            if w != 0:
                lines.append(f"    {w}  {lab}")
    else:
        lines.append(f"  separating hyperplane: {rep.certificate.hyperplane}")
        lines.append("    (holds on every vertex, fails at the target)")
        for f in rep.violated_facets:
            lines.append(f"  violated facet: {f}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def cmd_inequalities(args) -> int:
    q = _q(args)
    ineqs = cat.q_inequalities(q) if q is not None else cat.novel_inequalities(args.all_outcomes)
    if args.format == "json":
        _emit(export.dumps([export.inequality_json(i) for i in ineqs]), args)
        return EXIT_OK
    lines = [f"{i.label}\n    canonical: {i}" for i in ineqs]
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def cmd_report(args) -> int:
    results = []
    for f in reproduce.CRITERIA:
        if f is reproduce.criterion_9:
            results.append(f(args.instances))
        else:
            results.append(f())
    rep = cat.gyni_exclusion_report(reproduce.Q_GRID)
    dg = cat.build(cat.DEFINITE_GLOBAL)
    if args.format == "json":
        doc = {"criteria": [{"number": c.number, "title": c.title, "passed": c.passed,
                             "checks": [{"what": w, "ok": ok} for w, ok in c.checks], "notes": c.notes}
                            for c in results],
               "saturating_alice_first": {k: list(v) for k, v in rep.saturating_alice.items()},
               "saturating_bob_first": {k: list(v) for k, v in rep.saturating_bob.items()},
               "definite_global_facets": [export.inequality_json(f) for f in dg.h_description.inequalities]}
        text = export.dumps(doc)
    else:
        lines = []
        for c in results:
            lines += c.lines()
        lines.append("")
        lines.append("saturating vertices of the novel inequalities:")
        for k in rep.saturating_alice:
            lines.append(f"  {k}")
            lines.append(f"    alice-first: {', '.join(rep.saturating_alice[k])}")
            lines.append(f"    bob-first:   {', '.join(rep.saturating_bob[k])}")
        passed = sum(c.passed for c in results)
        lines.append("")
        lines.append(f"{passed}/{len(results)} criteria passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK if all(c.passed for c in results) else EXIT_MISMATCH


def cmd_figure_data(args) -> int:
    q = _q(args)
    polys = [_polytope(n, q) for n in args.polytope]
    dims = {p.v_description.ambient_dim for p in polys}
    if len(dims) != 1:
        raise UsageError("polytopes live in different ambient dimensions")
    dim = dims.pop()
    if len(args.projection) not in (2, 3):
        raise UsageError("give two or three --projection functionals")
    try:
        fns = [export.parse_functional(s, dim) for s in args.projection]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(export.figure_csv(polys, fns), args)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbtspoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("table", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("vertices", help="list a polytope's vertices")
    p.add_argument("polytope")
    p.add_argument("--q")
    common(p)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("facets", help="list a polytope's facets and equalities")
    p.add_argument("polytope")
    p.add_argument("--q")
    common(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("check", help="check a correlation file against an ordering regime")
    p.add_argument("file")
    p.add_argument("--ordering", default="weak")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("membership", help="certified hull membership")
    p.add_argument("target", help="correlation file, vertex name (gyni-00, pr-box, ...) or coords:c0,...,c7")
    p.add_argument("--polytope", default=cat.DEFINITE_GLOBAL)
    p.add_argument("--q")
    common(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("inequalities", help="novel facets, or the q-dependent ones with --q")
    p.add_argument("--q")
    p.add_argument("--all-outcomes", action="store_true", help="list every (a, b) variant")
    common(p)
    p.set_defaults(func=cmd_inequalities)

    p = sub.add_parser("report", help="run the full reproduction suite")
    p.add_argument("--instances", type=int, default=100, help="random geometry instances")
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("figure-data", help="CSV of projected vertices for plotting")
    p.add_argument("--polytope", action="append", required=True)
    p.add_argument("--projection", action="append", required=True,
                   help="e<i>, or comma-separated coefficients with optional :constant")
    p.add_argument("--q")
    common(p, formats=("csv",))
    p.set_defaults(func=cmd_figure_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nbtspoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"nbtspoly {args.command}: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
