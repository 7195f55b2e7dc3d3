"""Convex hulls, facets, vertices and membership certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dd
from .linalg import integer_scale, nullspace, rank, rref
from .lp import OPTIMAL, LPResult, lp_solve, simplex_standard
from .types import (EQ, GE, Certificate, CertificateKind, DimensionMismatch,
                    Inequality, Infeasible, Point, PolytopeH, PolytopeV,
                    Unbounded, make_point)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AffineHull:
    """Affine hull of a point set.

    ``equalities`` are in reduced echelon form; ``free`` lists the coordinates
    that are not pivots of those equalities, so projecting onto them is
    injective on the hull.
    """

    dim: int
    equalities: tuple[Inequality, ...]
    free: tuple[int, ...]


def affine_hull(points: PolytopeV) -> AffineHull:
    m = points.ambient_dim
    pts = points.vertices
    if not pts:
        return AffineHull(-1, (), ())
    basis = nullspace([list(p) + [-_ONE] for p in pts], m + 1)
    eqs = []
    pivots = set()
    for vec in basis:
        lead = next(i for i, v in enumerate(vec) if v != 0)
        pivots.add(lead)
        eqs.append(Inequality(tuple(vec[:m]), vec[m], EQ))
    free = tuple(i for i in range(m) if i not in pivots)
    return AffineHull(len(free), tuple(eqs), free)


def affine_dimension(points: PolytopeV) -> int:
    """Dimension of the affine hull; -1 for no points."""
    pts = points.vertices
    if not pts:
        return -1
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return rank(diffs) if diffs else 0


def _check_dim(query: Sequence, hull: PolytopeV) -> Point:
    q = make_point(query)
    if len(q) != hull.ambient_dim:
        raise DimensionMismatch(f"query has dim {len(q)}, hull has ambient dim {hull.ambient_dim}")
    return q


def convex_weights(query: Sequence, hull: PolytopeV) -> tuple[Fraction, ...] | None:
    """Exact convex weights expressing ``query`` over the hull points, if any."""
    q = _check_dim(query, hull)
    pts = hull.vertices
    if not pts:
        return None
    matrix = [[p[k] for p in pts] for k in range(hull.ambient_dim)] + [[_ONE] * len(pts)]
    rhs = list(q) + [_ONE]
    status, _, z = simplex_standard([_ZERO] * len(pts), matrix, rhs)
    if status != OPTIMAL:
        return None
    return tuple(z)


def separating_hyperplane(query: Sequence, hull: PolytopeV) -> Inequality | None:
    """An inequality valid on the hull and violated by ``query``, if one exists.

    Maximises ``c.query - t`` subject to ``c.v <= t`` on the hull and
    ``-1 <= c_i <= 1``; a positive optimum separates.
    """
    q = _check_dim(query, hull)
    m = hull.ambient_dim
    cons = []
    for v in hull.vertices:
        cons.append(Inequality(tuple(-x for x in v) + (_ONE,), _ZERO, GE))
    for i in range(m):
        e = [_ZERO] * (m + 1)
        e[i] = _ONE
        cons.append(Inequality(tuple(e), -_ONE, GE))
        cons.append(Inequality(tuple(-x for x in e), -_ONE, GE))
    res = lp_solve(list(q) + [-_ONE], PolytopeH(cons, (), m + 1), "max")
    if not res.optimal or res.value <= 0:
        return None
    c = res.point[:m]
    top = max(sum((a * b for a, b in zip(c, v)), _ZERO) for v in hull.vertices) if hull.vertices else _ZERO
    # c.x <= top on the hull, c.query > top
    return Inequality(tuple(-a for a in c), -top, GE)


def is_in_hull(query: Sequence, hull: PolytopeV) -> tuple[bool, Certificate]:
    """Decide membership of ``query`` in conv(hull) with a certificate."""
    q = _check_dim(query, hull)
    w = convex_weights(q, hull)
    if w is not None:
        return True, Certificate(CertificateKind.CONVEX_WEIGHTS, weights=w)
    h = separating_hyperplane(q, hull)
    if h is None:
        raise ArithmeticError("membership LPs disagree")  # cannot happen by LP duality
    return False, Certificate(CertificateKind.SEPARATING_HYPERPLANE, hyperplane=h)


def _canonical_sorted(constraints) -> tuple[Inequality, ...]:
    return tuple(sorted(constraints, key=Inequality.key))


def hull_facets(points: PolytopeV, order: str = "maxcutoff") -> PolytopeH:
    """Irredundant H-description of conv(points).

    Facet inequalities are computed inside the affine hull and carry zero
    coefficients on the coordinates eliminated by the equalities, so they
    are unique for a given point set.
    """
    if not points.vertices:
        raise ValueError("hull_facets needs at least one point")
    m = points.ambient_dim
    aff = affine_hull(points)
    if aff.dim == 0:
        return PolytopeH((), aff.equalities, m)
    free = aff.free
    # polar cone: (c, c0) with c.v + c0 >= 0 on every point
    rows = [integer_scale([p[i] for i in free] + [_ONE]) for p in points.vertices]
    rays = dd.extreme_rays(rows, order=order)
    facets = []
    for r in rays:
        coeffs = [_ZERO] * m
        for i, c in zip(free, r[:-1]):
            coeffs[i] = Fraction(c)
        facets.append(Inequality(tuple(coeffs), Fraction(-r[-1]), GE))
    return PolytopeH(_canonical_sorted(facets), aff.equalities, m)


def _sorted_points(pts) -> tuple[Point, ...]:
    return tuple(sorted(set(pts)))


def hrep_vertices(constraints: PolytopeH, order: str = "maxcutoff") -> PolytopeV:
    """Vertices of a bounded H-described region.

    Raises :class:`Infeasible` for an empty region and :class:`Unbounded`
    when the region is nonempty but unbounded.
    """
    m = constraints.ambient_dim
    eq_rows = [list(e.coefficients) + [e.bound] for e in constraints.equalities]
    red, pivots = rref(eq_rows) if eq_rows else ([], [])
    if m in pivots:
        raise Infeasible("equalities are inconsistent")
    free = [i for i in range(m) if i not in pivots]
    k = len(free)

    # x = x0 + N z with z the free coordinates
    x0 = [_ZERO] * m
    for row, p in zip(red, pivots):
        x0[p] = row[m]
    cols = []
    for f in free:
        col = [_ZERO] * m
        col[f] = _ONE
        for row, p in zip(red, pivots):
            col[p] = -row[f]
        cols.append(col)

    reduced = []
    for ineq in constraints.inequalities:
        a = ineq.coefficients
        az = [sum((ai * ci for ai, ci in zip(a, col)), _ZERO) for col in cols]
        rhs = ineq.bound - sum((ai * xi for ai, xi in zip(a, x0)), _ZERO)
        reduced.append((az, rhs))

    def lift(z):
        return tuple(x0[i] + sum((zj * col[i] for zj, col in zip(z, cols)), _ZERO) for i in range(m))

    if k == 0:
        if all(rhs <= 0 for _, rhs in reduced):
            return PolytopeV([tuple(x0)], m)
        raise Infeasible("the unique solution of the equalities violates an inequality")

    # homogenised cone in (z, t): az.z - rhs t >= 0, t >= 0
    rows = [integer_scale(az + [-rhs]) for az, rhs in reduced]
    rows.append([0] * k + [1])
    if rank(rows) < k + 1:
        feas = lp_solve([_ZERO] * m, constraints, "max")
        if feas.status == OPTIMAL:
            raise Unbounded("region contains a line")
        raise Infeasible("region is empty")
    rays = dd.extreme_rays(rows, order=order)
    verts = []
    recession = False
    for r in rays:
        t = r[-1]
        if t == 0:
            recession = True
        else:
            verts.append(lift([Fraction(v, t) for v in r[:-1]]))
    if not verts:
        raise Infeasible("region is empty")
    if recession:
        raise Unbounded("region has a recession direction")
    return PolytopeV(_sorted_points(verts), m)


def _tight_rank(point, facets: Sequence[Inequality]) -> int:
    tight = [list(f.coefficients) for f in facets if f.slack(point) == 0]
    return rank(tight) if tight else 0


def extremal_subset(points: PolytopeV) -> PolytopeV:
    """Points of the set that are vertices of its convex hull.

    Duplicates are merged.  A point is kept when the facets through it pin
    it down inside the affine hull (their normals reach full rank there).
    Output keeps the input order.
    """
    pts = points.vertices
    if len(pts) <= 1:
        return points
    h = hull_facets(points)
    d = len(affine_hull(points).free)
    if d == 0:
        return PolytopeV(pts[:1], points.ambient_dim)
    keep = [p for p in pts if _tight_rank(p, h.inequalities) == d]
    return PolytopeV(keep, points.ambient_dim)


def extremal_subset_lp(points: PolytopeV) -> PolytopeV:
    """LP route for :func:`extremal_subset`: test each point against the
    hull of all the others."""
    pts = points.vertices
    keep = []
    for i, p in enumerate(pts):
        others = PolytopeV(pts[:i] + pts[i + 1:], points.ambient_dim)
        if convex_weights(p, others) is None:
            keep.append(p)
    return PolytopeV(keep, points.ambient_dim)


def extremality_certificates(points: PolytopeV, facets: PolytopeH | None = None
                             ) -> dict[Point, Certificate]:
    """Certificate for every point: weights over the other points for a
    redundant one, a strictly separating inequality for a vertex.

    Redundant points are expressed over the vertices of their minimal face,
    which keeps each LP small.
    """
    pts = points.vertices
    m = points.ambient_dim
    if facets is None:
        facets = hull_facets(points)
    d = len(affine_hull(points).free)
    ineqs = facets.inequalities
    certs: dict[Point, Certificate] = {}
    vertex_set = set(extremal_subset(points).vertices)
    index = {p: i for i, p in enumerate(pts)}
    for p in pts:
        tight = [f for f in ineqs if f.slack(p) == 0]
        if p in vertex_set:
            if len(pts) == 1:
                continue
            coeffs = tuple(sum((f.coefficients[k] for f in tight), _ZERO) for k in range(m))
            base = sum((f.bound for f in tight), _ZERO)
            if d == 0:
                continue
            gap = min(sum((a * b for a, b in zip(coeffs, w)), _ZERO) - base for w in pts if w != p)
            # others satisfy coeffs.x >= base + gap, p sits at base
            h = Inequality(coeffs, base + gap, GE)
            certs[p] = Certificate(CertificateKind.SEPARATING_HYPERPLANE, hyperplane=h)
        else:
            face = [v for v in vertex_set if all(f.slack(v) == 0 for f in tight)]
            face.sort(key=index.__getitem__)
            w = convex_weights(p, PolytopeV(face, m))
            full = {v: x for v, x in zip(face, w)}
            weights = tuple(full.get(v, _ZERO) for v in pts if v != p)
            certs[p] = Certificate(CertificateKind.CONVEX_WEIGHTS, weights=weights)
    return certs


def others(points: PolytopeV, point: Point) -> PolytopeV:
    return PolytopeV([v for v in points.vertices if v != point], points.ambient_dim)


__all__ = [
    "AffineHull", "affine_hull", "affine_dimension", "convex_weights",
    "separating_hyperplane", "is_in_hull", "hull_facets", "hrep_vertices",
    "extremal_subset", "extremal_subset_lp", "extremality_certificates",
    "others", "LPResult",
]
