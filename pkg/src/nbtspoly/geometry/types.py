"""Value types shared by the geometry routines.

Every number is a :class:`fractions.Fraction`; points are plain tuples of
fractions so they hash and compare exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import dot, integer_scale

Point = tuple[Fraction, ...]


class GeometryError(Exception):
    pass


class DimensionMismatch(GeometryError, ValueError):
    pass


class Infeasible(GeometryError):
    """The constraint system has no solution."""


class Unbounded(GeometryError):
    """The constraint system describes an unbounded region."""


def make_point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


GE = ">="
LE = "<="
EQ = "="


@dataclass(frozen=True)
class Inequality:
    """Affine constraint ``coefficients . x  relation  bound``.

    Stored in canonical form: integer coefficients and bound with no common
    factor, ``<=`` rewritten as ``>=``, and equalities signed so the leading
    nonzero coefficient is positive.  ``label`` is free text for reports and
    does not take part in comparisons.
    """

    coefficients: tuple[Fraction, ...]
    bound: Fraction
    relation: str = GE
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.relation not in (GE, LE, EQ):
            raise ValueError(f"unknown relation {self.relation!r}")
        coeffs = [Fraction(c) for c in self.coefficients]
        bound = Fraction(self.bound)
        relation = self.relation
        if relation == LE:
            coeffs = [-c for c in coeffs]
            bound = -bound
            relation = GE
        ints = integer_scale(coeffs + [bound])
        if relation == EQ:
            lead = next((v for v in ints if v != 0), 0)
            if lead < 0:
                ints = [-v for v in ints]
        object.__setattr__(self, "coefficients", tuple(Fraction(v) for v in ints[:-1]))
        object.__setattr__(self, "bound", Fraction(ints[-1]))
        object.__setattr__(self, "relation", relation)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def value(self, point: Sequence) -> Fraction:
        return dot(self.coefficients, point)

    def slack(self, point: Sequence) -> Fraction:
        """``value(point) - bound``; nonnegative iff a ``>=`` constraint holds."""
        if len(point) != self.dim:
            raise DimensionMismatch(f"point of dim {len(point)} vs constraint of dim {self.dim}")
        return self.value(point) - self.bound

    def satisfied_by(self, point: Sequence) -> bool:
        s = self.slack(point)
        return s == 0 if self.relation == EQ else s >= 0

    def key(self) -> tuple:
        return (self.relation, tuple(self.coefficients), self.bound)

    def integer_form(self) -> tuple[list[int], int]:
        return [int(c) for c in self.coefficients], int(self.bound)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            terms.append(f"{sign} {'' if mag == 1 else str(mag) + '*'}x{i}")
        lhs = " ".join(terms).lstrip("+ ") or "0"
        if lhs.startswith("- "):
            lhs = "-" + lhs[2:]
        return f"{lhs} {self.relation} {self.bound}"


def _dedupe(items: Iterable) -> tuple:
    seen = set()
    out = []
    for it in items:
        k = it.key() if isinstance(it, Inequality) else it
        if k not in seen:
            seen.add(k)
            out.append(it)
    return tuple(out)


@dataclass(frozen=True)
class PolytopeV:
    """Finite point set whose convex hull is the polytope."""

    vertices: tuple[Point, ...]
    ambient_dim: int

    def __init__(self, vertices: Iterable[Sequence], ambient_dim: Optional[int] = None):
        pts = [make_point(v) for v in vertices]
        if ambient_dim is None:
            if not pts:
                raise ValueError("ambient_dim is required for an empty point set")
            ambient_dim = len(pts[0])
        for p in pts:
            if len(p) != ambient_dim:
                raise DimensionMismatch(f"point {p} is not of dimension {ambient_dim}")
        object.__setattr__(self, "vertices", _dedupe(pts))
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def as_set(self) -> frozenset:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class PolytopeH:
    """``{x : a.x >= b for each inequality, c.x = d for each equality}``."""

    inequalities: tuple[Inequality, ...]
    equalities: tuple[Inequality, ...]
    ambient_dim: int

    def __init__(self, inequalities: Iterable[Inequality] = (), equalities: Iterable[Inequality] = (),
                 ambient_dim: Optional[int] = None):
        ineqs = list(inequalities)
        eqs = list(equalities)
        for e in eqs:
            if e.relation != EQ:
                raise ValueError(f"{e} listed as an equality")
        for i in ineqs:
            if i.relation == EQ:
                raise ValueError(f"{i} listed as an inequality")
        if ambient_dim is None:
            if not ineqs and not eqs:
                raise ValueError("ambient_dim is required for an empty constraint list")
            ambient_dim = (ineqs or eqs)[0].dim
        for c in ineqs + eqs:
            if c.dim != ambient_dim:
                raise DimensionMismatch(f"constraint {c} is not of dimension {ambient_dim}")
        object.__setattr__(self, "inequalities", _dedupe(ineqs))
        object.__setattr__(self, "equalities", _dedupe(eqs))
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def contains(self, point: Sequence) -> bool:
        return all(c.satisfied_by(point) for c in self.inequalities + self.equalities)

    def constraints(self) -> tuple[Inequality, ...]:
        return self.inequalities + self.equalities


class CertificateKind(enum.Enum):
    CONVEX_WEIGHTS = "convex-weights"
    SEPARATING_HYPERPLANE = "separating-hyperplane"


@dataclass(frozen=True)
class Certificate:
    """Proof of hull membership or exclusion.

    ``weights`` are convex weights over the hull's points (membership).
    ``hyperplane`` is a ``>=`` inequality satisfied by every hull point and
    violated by the query (exclusion); the functional ``-coefficients`` is
    then strictly larger at the query than anywhere on the hull.
    """

    kind: CertificateKind
    weights: Optional[tuple[Fraction, ...]] = None
    hyperplane: Optional[Inequality] = None

    def verify(self, query: Sequence, hull: PolytopeV) -> bool:
        if self.kind is CertificateKind.CONVEX_WEIGHTS:
            w = self.weights
            if w is None or len(w) != len(hull.vertices):
                return False
            if any(x < 0 for x in w) or sum(w) != 1:
                return False
            combo = [sum((wi * v[k] for wi, v in zip(w, hull.vertices)), Fraction(0))
                     for k in range(hull.ambient_dim)]
            return tuple(combo) == tuple(Fraction(c) for c in query)
        h = self.hyperplane
        if h is None or h.relation != GE:
            return False
        return h.slack(query) < 0 and all(h.slack(v) >= 0 for v in hull.vertices)
