"""Brute-force reference routines for small instances.

These share no code path with the simplex or double description
implementations: everything is subset enumeration plus exact linear solves.
Cost is combinatorial, so keep dimension and point counts small.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .linalg import dot, nullspace, rank, solve
from .types import GE, Inequality, PolytopeH, PolytopeV, make_point


def vertices_by_enumeration(constraints: PolytopeH) -> set:
    """Every feasible point where ``ambient_dim`` linearly independent
    constraints (equalities always included) are tight."""
    m = constraints.ambient_dim
    eqs = [list(e.coefficients) for e in constraints.equalities]
    eq_rhs = [e.bound for e in constraints.equalities]
    ineqs = constraints.inequalities
    need = m - rank(eqs) if eqs else m
    found = set()
    for subset in itertools.combinations(range(len(ineqs)), need):
        mat = eqs + [list(ineqs[i].coefficients) for i in subset]
        if rank(mat) != m:
            continue
        x = solve(mat, eq_rhs + [ineqs[i].bound for i in subset])
        if x is not None and constraints.contains(x):
            found.add(tuple(x))
    return found


def in_hull_by_caratheodory(query: Sequence, points: PolytopeV) -> bool:
    """Membership via Caratheodory: try every subset of ``d + 1`` points,
    ``d`` the affine dimension, for nonnegative barycentric weights.

    A smaller affinely independent support extends to ``d + 1`` points with
    zero weights, so no other subset size is needed.
    """
    q = make_point(query)
    pts = points.vertices
    m = points.ambient_dim
    if not pts:
        return False
    d = rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) if len(pts) > 1 else 0
    for subset in itertools.combinations(pts, d + 1):
        # sum w_j p_j = q, sum w_j = 1
        mat = [[p[k] for p in subset] for k in range(m)] + [[Fraction(1)] * (d + 1)]
        w = solve(mat, list(q) + [Fraction(1)])
        if w is None or any(wi < 0 for wi in w):
            continue
        check = tuple(sum((wi * p[k] for wi, p in zip(w, subset)), Fraction(0)) for k in range(m))
        if check == q:
            return True
    return False


def facets_by_enumeration(points: PolytopeV) -> set:
    """Facets of a full-dimensional hull: hyperplanes through ``dim``
    affinely independent points with every point on one side."""
    pts = points.vertices
    m = points.ambient_dim
    found = set()
    for subset in itertools.combinations(pts, m):
        # c.p = c0 on the subset: rows (p, -1) (c, c0) = 0
        rows = [list(p) + [Fraction(-1)] for p in subset]
        if rank(rows) != m:
            continue
        ns = nullspace(rows, m + 1)
        if len(ns) != 1:
            continue
        vec = ns[0]
        c, c0 = vec[:m], vec[m]
        if all(c_ == 0 for c_ in c):
            continue
        vals = [dot(c, p) - c0 for p in pts]
        if all(v >= 0 for v in vals):
            found.add(Inequality(tuple(c), c0, GE).key())
        elif all(v <= 0 for v in vals):
            found.add(Inequality(tuple(-x for x in c), -c0, GE).key())
    return found


def optimum_by_vertices(objective: Sequence, vertices, sense: str = "max") -> Fraction:
    vals = [dot([Fraction(c) for c in objective], v) for v in vertices]
    return max(vals) if sense == "max" else min(vals)
