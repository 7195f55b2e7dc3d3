"""Serialisation: polytope documents, figure-data rows."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import NamedPolytope
from .geometry import Inequality, PolytopeV


def rat(v) -> str:
    return str(Fraction(v))


def inequality_json(ineq: Inequality) -> dict:
    coeffs, bound = ineq.integer_form()
    doc = {"coefficients": coeffs, "bound": bound, "relation": ineq.relation}
    if ineq.label:
        doc["label"] = ineq.label
    return doc


def polytope_json(p: NamedPolytope) -> dict:
    """Byte-stable document: vertices and constraints in lexicographic order."""
    verts = sorted(zip(p.vertices, p.labels))
    return {
        "name": p.title,
        "ambient_dim": p.v_description.ambient_dim,
        "dimension": p.dimension,
        "vertex_count": len(verts),
        "vertices": [{"coords": [rat(c) for c in v], "label": lab} for v, lab in verts],
        "facets": [inequality_json(f) for f in sorted(p.h_description.inequalities, key=Inequality.key)],
        "equalities": [inequality_json(e) for e in sorted(p.h_description.equalities, key=Inequality.key)],
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class PolytopeFileError(ValueError):
    pass


@dataclass(frozen=True)
class LoadedPolytope:
    """Vertex list read back from a polytope document."""

    title: str
    v_description: PolytopeV
    labels: tuple[str, ...]

    @property
    def vertices(self):
        return self.v_description.vertices

    def labelled(self):
        return list(zip(self.labels, self.vertices))


def load_polytope(text: str) -> LoadedPolytope:
    try:
        doc = json.loads(text)
        dim = int(doc["ambient_dim"])
        verts = []
        labels = []
        for i, entry in enumerate(doc["vertices"]):
            coords = [Fraction(c) for c in entry["coords"]]
            if len(coords) != dim:
                raise PolytopeFileError(f"vertices[{i}] has {len(coords)} coordinates, expected {dim}")
            verts.append(tuple(coords))
            labels.append(str(entry.get("label") or f"v{i}"))
        return LoadedPolytope(str(doc.get("name", "polytope")), PolytopeV(verts, dim), tuple(labels))
    except json.JSONDecodeError as exc:
        raise PolytopeFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, PolytopeFileError):
            raise
        raise PolytopeFileError(f"malformed polytope document: {exc}") from None


@dataclass(frozen=True)
class Functional:
    coefficients: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)
    text: str = ""

    def __call__(self, point: Sequence) -> Fraction:
        return self.constant + sum((c * Fraction(v) for c, v in zip(self.coefficients, point)), Fraction(0))


def parse_functional(text: str, dim: int) -> Functional:
    """``e3`` for a coordinate, or comma-separated rationals with an optional
    ``:constant`` suffix, e.g. ``0,1,0,1,-1,0,0,-1:0``."""
    text = text.strip()
    try:
        if text.startswith("e") and text[1:].isdigit():
            i = int(text[1:])
            if i >= dim:
                raise ValueError(f"coordinate {i} out of range for dimension {dim}")
            return Functional(tuple(Fraction(int(k == i)) for k in range(dim)), Fraction(0), text)
        body, _, const = text.partition(":")
        coeffs = tuple(Fraction(c.strip()) for c in body.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad projection {text!r}: {exc}") from None
    if len(coeffs) != dim:
        raise ValueError(f"projection {text!r} has {len(coeffs)} coefficients, ambient dimension is {dim}")
    try:
        constant = Fraction(const) if const else Fraction(0)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad constant in projection {text!r}") from None
    return Functional(coeffs, constant, text)


def figure_rows(polytopes: Iterable, functionals: Sequence[Functional]) -> list[list[str]]:
    """One row per vertex per polytope.

    Columns hold each projection as an exact rational followed by a decimal
    approximation; the approximations are for plotting only.
    """
    rows = []
    for p in polytopes:
        for label, v in p.labelled():
            row = [p.title, label]
            for f in functionals:
                val = f(v)
                row += [rat(val), f"{float(val):.6f}"]
            rows.append(row)
    return rows


def figure_csv(polytopes: Iterable, functionals: Sequence[Functional]) -> str:
    header = ["polytope", "vertex"]
    for i in range(len(functionals)):
        header += [f"f{i}", f"f{i}_approx"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(figure_rows(polytopes, functionals))
    return buf.getvalue()
