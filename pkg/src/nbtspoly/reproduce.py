"""Reproduction checks for every published count, dimension and claim.

Each ``criterion_*`` function runs one check end to end and returns a
:class:`Criterion`; :func:`run_all` drives them for the ``report`` command and
the acceptance tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import catalog as cat
from . import correlations as cr
from .correlations import TimeOrdering, to_coords
from .geometry import (PolytopeH, PolytopeV, affine_dimension, extremal_subset,
                       hrep_vertices, hull_facets, is_in_hull, lp_solve)
from .geometry import oracles
from .geometry.types import Inequality

SET_Q_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 4))
Q_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass
class Criterion:
    number: int
    title: str
    checks: list[tuple[str, bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, what: str, ok: bool) -> bool:
        self.checks.append((what, bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)

    def lines(self) -> list[str]:
        out = [f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title}"]
        out += [f"    {'ok  ' if ok else 'FAIL'} {what}" for what, ok in self.checks]
        out += [f"    note: {n}" for n in self.notes]
        return out


def _families(labels) -> dict[str, int]:
    out: dict[str, int] = {}
    for lab in labels:
        fam = lab.split("-")[0]
        out[fam] = out.get(fam, 0) + 1
    return out


def criterion_1() -> Criterion:
    c = Criterion(1, "weak-NBTS polytope: 24 vertices (16 deterministic + 8 PR-like), dimension 8")
    p = cat.build(cat.NBTS)
    det = {to_coords(lab.correlation()) for lab in cr.deterministic_labels()}
    pr = {to_coords(lab.correlation()) for lab in cr.pr_like_labels()}
    verts = set(p.vertices)
    c.check(f"vertex count {len(verts)} == 24", len(verts) == 24)
    c.check("vertices are exactly the 16 deterministic and 8 PR-like tables", verts == det | pr)
    c.check(f"affine dimension {p.dimension} == 8", p.dimension == 8)
    return c


def criterion_2() -> Criterion:
    c = Criterion(2, "Alice-first and Bob-first polytopes: 20 vertices, dimension 7, swap-related")
    af = cat.build(cat.ALICE_FIRST)
    bf = cat.build(cat.BOB_FIRST)
    c.check(f"Alice-first vertex count {len(af.vertices)} == 20", len(af.vertices) == 20)
    c.check(f"Bob-first vertex count {len(bf.vertices)} == 20", len(bf.vertices) == 20)
    c.check(f"dimensions {af.dimension}, {bf.dimension} == 7", af.dimension == bf.dimension == 7)
    c.check("a<->b, x<->y swap maps Alice-first vertices onto Bob-first vertices",
            {cr.swap_coords(v) for v in af.vertices} == set(bf.vertices))
    c.check("every Alice-first vertex passes the Alice-first conditions",
            all(cr.nbts_check(cr.from_coords(v), TimeOrdering.ALICE_FIRST) for v in af.vertices))
    c.check("every Bob-first vertex passes the Bob-first conditions",
            all(cr.nbts_check(cr.from_coords(v), TimeOrdering.BOB_FIRST) for v in bf.vertices))
    marg = cat.build(cat.ALICE_FIRST_MARGINAL)
    c.notes.append(f"the polytope cut out by the Alice-first equalities alone has {len(marg.vertices)} vertices")
    return c


def criterion_3() -> Criterion:
    c = Criterion(3, "definite-global-timing polytope: 22 vertices = 12 deterministic + 8 PR-like + 2 linear, dimension 8")
    af = cat.build(cat.ALICE_FIRST)
    bf = cat.build(cat.BOB_FIRST)
    dg = cat.build(cat.DEFINITE_GLOBAL)
    union = set(af.vertices) | set(bf.vertices)
    c.check(f"union of Alice-first and Bob-first has {len(union)} distinct of 40 points", dg.candidates == 40)
    c.check(f"extremal reduction leaves {len(dg.vertices)} == 22", len(dg.vertices) == 22)
    det = {to_coords(lab.correlation()) for lab in cr.deterministic_labels(include_gyni=False)}
    pr = {to_coords(lab.correlation()) for lab in cr.pr_like_labels()}
    lin = {to_coords(lab.correlation()) for lab in cr.linear_labels()}
    verts = set(dg.vertices)
    c.check(f"12 deterministic (mu, nu not both 1): found {len(verts & det)}", len(verts & det) == 12 and len(det) == 12)
    c.check(f"8 PR-like: found {len(verts & pr)}", len(verts & pr) == 8)
    c.check(f"2 linear: found {len(verts & lin)}", len(verts & lin) == 2)
    c.check("no other vertices", verts == det | pr | lin)
    c.check(f"affine dimension {dg.dimension} == 8", dg.dimension == 8)
    c.notes.append(f"total facet count {len(dg.h_description.inequalities)}")
    return c


def criterion_4() -> Criterion:
    c = Criterion(4, "GYNI vertices: outside definite-global timing with exact certificate, inside weak NBTS")
    dg = cat.build(cat.DEFINITE_GLOBAL)
    for lab in cr.gyni_labels():
        corr = lab.correlation()
        pt = to_coords(corr)
        inside, cert = is_in_hull(pt, dg.v_description)
        c.check(f"{lab}: outside, separating hyperplane verifies exactly",
                not inside and cert.hyperplane is not None and cert.verify(pt, dg.v_description))
        c.check(f"{lab}: passes weak NBTS", cr.nbts_check(corr, TimeOrdering.WEAK).passed)
    return c


def criterion_5() -> Criterion:
    c = Criterion(5, "novel facets: all 8 present, saturated on both orderings, violated only by GYNI")
    dg = cat.build(cat.DEFINITE_GLOBAL)
    rep = cat.gyni_exclusion_report(())
    facets = {f.key() for f in dg.h_description.inequalities}
    novel = cat.novel_inequalities()
    c.check(f"{len(novel)} canonical inequalities generated", len(novel) == 8 and len({i.key() for i in novel}) == 8)
    for ineq in novel:
        c.check(f"facet: {ineq.label}", ineq.key() in facets)
    for ineq in novel:
        c.check(f"saturated by {len(rep.saturating_alice[ineq.label])} Alice-first and "
                f"{len(rep.saturating_bob[ineq.label])} Bob-first vertices: {ineq.label}",
                rep.saturating_alice[ineq.label] and rep.saturating_bob[ineq.label])
    violators = set().union(*rep.nbts_violators.values())
    gyni = {str(lab) for lab in cr.gyni_labels()}
    c.check(f"violators among the 24 NBTS vertices: {sorted(violators)}", violators == gyni)
    c.check("every definite-global vertex satisfies all 8", rep.definite_vertices_valid)
    return c


def criterion_6() -> Criterion:
    c = Criterion(6, "set-q polytope: 400 candidates reduce to 150 vertices, dimension 8; q=1, q=0 limits")
    for q in SET_Q_VALUES:
        p = cat.build(cat.SET_Q, q)
        c.check(f"q={q}: {p.candidates} candidates == 400", p.candidates == 400)
        c.check(f"q={q}: {len(p.vertices)} extremal vertices == 150", len(p.vertices) == 150)
        c.check(f"q={q}: dimension {p.dimension} == 8", p.dimension == 8)
    c.check("q=1 vertex set equals Alice-first",
            set(cat.build(cat.SET_Q, 1).vertices) == set(cat.build(cat.ALICE_FIRST).vertices))
    c.check("q=0 vertex set equals Bob-first",
            set(cat.build(cat.SET_Q, 0).vertices) == set(cat.build(cat.BOB_FIRST).vertices))
    return c


def criterion_7() -> Criterion:
    c = Criterion(7, "q-dependent facets: present for 0<q<1, GYNI violate them for every q")
    for q in SET_Q_VALUES:
        facets = {f.key() for f in cat.build(cat.SET_Q, q).h_description.inequalities}
        ineqs = cat.q_inequalities(q)
        c.check(f"q={q}: all 4 q-inequalities are facets", all(i.key() in facets for i in ineqs))
    for q in Q_GRID:
        for lab in cr.gyni_labels():
            pt = to_coords(lab.correlation())
            bad = [i.label for i in cat.q_inequalities(q) if i.slack(pt) < 0]
            c.check(f"q={q}: {lab} violates {len(bad)} q-inequalities", bad)
    return c


def criterion_8() -> Criterion:
    c = Criterion(8, "PR box: passes all four regimes, inside Alice-first and Bob-first")
    box = cr.pr_box()
    for o in TimeOrdering:
        c.check(f"passes {o.value}", cr.nbts_check(box, o).passed)
    for name in (cat.ALICE_FIRST, cat.BOB_FIRST):
        rep = cat.membership_report(box, name)
        c.check(f"inside {name} with verified convex weights", rep.inside and rep.verified)
    return c


# ---------------------------------------------------------------- geometry oracle suite

def random_points(rng: random.Random, dim: int, count: int) -> PolytopeV:
    pts = [tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(dim)) for _ in range(count)]
    return PolytopeV(pts, dim)


def random_box_cuts(rng: random.Random, dim: int, cuts: int) -> PolytopeH:
    ineqs = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        ineqs.append(Inequality(tuple(e), -rng.randint(1, 3)))
        ineqs.append(Inequality(tuple(-v for v in e), -rng.randint(1, 3)))
    for _ in range(cuts):
        a = [rng.randint(-2, 2) for _ in range(dim)]
        if any(a):
            ineqs.append(Inequality(tuple(a), -rng.randint(0, 3)))
    return PolytopeH(ineqs, (), dim)


def check_v_instance(V: PolytopeV, queries, objective) -> list[str]:
    """All oracle comparisons for one point set; returns failure messages."""
    bad = []
    H = hull_facets(V)
    ext = set(extremal_subset(V).vertices)
    brute_ext = {p for p in V.vertices
                 if not oracles.in_hull_by_caratheodory(p, PolytopeV([v for v in V.vertices if v != p], V.ambient_dim))}
    if len(V.vertices) == 1:
        brute_ext = set(V.vertices)
    if ext != brute_ext:
        bad.append("extremal_subset disagrees with brute force")
    back = hrep_vertices(H)
    if set(back.vertices) != ext:
        bad.append("hrep_vertices(hull_facets(V)) != extremal vertices")
    if {f.key() for f in hull_facets(back).constraints()} != {f.key() for f in H.constraints()}:
        bad.append("hull_facets does not round-trip")
    if affine_dimension(V) == V.ambient_dim and len(V.vertices) > V.ambient_dim:
        if {f.key() for f in H.inequalities} != oracles.facets_by_enumeration(V):
            bad.append("facets disagree with brute-force enumeration")
    for q in queries:
        inside, cert = is_in_hull(q, V)
        if inside != oracles.in_hull_by_caratheodory(q, V):
            bad.append(f"is_in_hull wrong at {q}")
        if not cert.verify(q, V):
            bad.append(f"certificate fails at {q}")
    for sense in ("max", "min"):
        res = lp_solve(objective, H, sense)
        if not res.optimal or res.value != oracles.optimum_by_vertices(objective, ext, sense):
            bad.append(f"lp_solve {sense} disagrees with vertex enumeration")
        elif not H.contains(res.point):
            bad.append("lp_solve point infeasible")
    return bad


def check_h_instance(H: PolytopeH, objective) -> list[str]:
    bad = []
    V = hrep_vertices(H)
    brute = oracles.vertices_by_enumeration(H)
    if set(V.vertices) != brute:
        bad.append("hrep_vertices disagrees with brute-force enumeration")
    res = lp_solve(objective, H, "max")
    if not res.optimal or res.value != oracles.optimum_by_vertices(objective, brute):
        bad.append("lp_solve disagrees with vertex enumeration on H instance")
    # mutual containment between H and the facets of its vertices
    H2 = hull_facets(V)
    for f in H.inequalities:
        if lp_solve(f.coefficients, H2, "min").value < f.bound:
            bad.append("hull_facets(hrep_vertices(H)) escapes H")
    for f in H2.inequalities:
        if lp_solve(f.coefficients, H, "min").value < f.bound:
            bad.append("H escapes hull_facets(hrep_vertices(H))")
    return bad


def criterion_9(instances: int = 100, seed: int = 20171) -> Criterion:
    c = Criterion(9, f"geometry oracle suite on {instances} random V- and H-instances (dim <= 4, <= 12 points)")
    rng = random.Random(seed)
    failures = []
    for k in range(instances):
        dim = rng.randint(1, 4)
        V = random_points(rng, dim, rng.randint(1, 12))
        queries = [tuple(Fraction(rng.randint(-8, 8), 4) for _ in range(dim)) for _ in range(3)]
        queries.append(tuple(sum(p[i] for p in V.vertices) / len(V.vertices) for i in range(dim)))
        objective = [rng.randint(-3, 3) for _ in range(dim)]
        failures += [f"V#{k}: {m}" for m in check_v_instance(V, queries, objective)]
        H = random_box_cuts(rng, dim, rng.randint(0, 4))
        failures += [f"H#{k}: {m}" for m in check_h_instance(H, objective)]
    c.check(f"{instances} V-instances and {instances} H-instances agree with brute force", not failures)
    c.notes += failures[:10]
    return c


CRITERIA: tuple[Callable[[], Criterion], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9,
)


def run_all() -> list[Criterion]:
    return [f() for f in CRITERIA]
