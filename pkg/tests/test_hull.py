import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nbtspoly import correlations as cr
from nbtspoly.geometry import (EQ, GE, LE, CertificateKind, DimensionMismatch, Inequality,
                               Infeasible, PolytopeH, PolytopeV, Unbounded, affine_dimension,
                               extremal_subset, extremal_subset_lp, extremality_certificates,
                               hrep_vertices, hull_facets, is_in_hull, lp_solve)
from nbtspoly.geometry import dd, oracles

from conftest import point_sets, small_rationals


# ---------------------------------------------------------------- Inequality

def test_inequality_canonical_form():
    i = Inequality((F(1, 2), F(-1, 3)), F(1, 6), LE)
    assert i.relation == GE
    assert i.coefficients == (-3, 2) and i.bound == -1
    e = Inequality((-2, 4), 6, EQ)
    assert e.coefficients == (1, -2) and e.bound == -3
    assert Inequality((2, 2), 2).key() == Inequality((1, 1), 1).key()


def test_inequality_label_ignored_in_equality():
    assert Inequality((1,), 0, GE, "a") == Inequality((1,), 0, GE, "b")


# ---------------------------------------------------------------- dimension

@pytest.mark.parametrize("pts,dim", [
    ([], -1),
    ([(0, 0)], 0),
    ([(0, 0), (1, 0), (0, 1)], 2),
    ([(0, 0), (1, 1), (2, 2)], 1),
])
def test_affine_dimension(pts, dim):
    assert affine_dimension(PolytopeV(pts, 2)) == dim


def test_definite_global_families_span_eight_dimensions():
    labels = (cr.deterministic_labels(include_gyni=False) + cr.pr_like_labels() + cr.linear_labels())
    pts = [cr.to_coords(lab.correlation()) for lab in labels]
    assert len(pts) == 22
    assert affine_dimension(PolytopeV(pts)) == 8


# ---------------------------------------------------------------- membership

def test_midpoint_inside_with_weights():
    hull = PolytopeV([(0, 0), (1, 1)])
    inside, cert = is_in_hull((F(1, 2), F(1, 2)), hull)
    assert inside
    assert cert.kind is CertificateKind.CONVEX_WEIGHTS
    assert cert.weights == (F(1, 2), F(1, 2))
    assert cert.verify((F(1, 2), F(1, 2)), hull)


def test_exterior_point_separated():
    hull = PolytopeV([(0, 0), (1, 1)])
    inside, cert = is_in_hull((2, 0), hull)
    assert not inside
    assert cert.kind is CertificateKind.SEPARATING_HYPERPLANE
    assert cert.verify((2, 0), hull)
    assert cert.hyperplane.slack((2, 0)) < 0


def test_membership_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        is_in_hull((0, 0, 0), PolytopeV([(0, 0)]))


def test_gyni_outside_definite_families():
    labels = (cr.deterministic_labels(include_gyni=False) + cr.pr_like_labels() + cr.linear_labels())
    hull = PolytopeV([cr.to_coords(lab.correlation()) for lab in labels])
    g = cr.to_coords(cr.gyni_vertex(0, 0))
    inside, cert = is_in_hull(g, hull)
    assert not inside and cert.verify(g, hull)


def test_tampered_certificates_rejected():
    hull = PolytopeV([(0, 0), (1, 1)])
    _, cert = is_in_hull((F(1, 2), F(1, 2)), hull)
    assert not cert.verify((F(1, 3), F(1, 2)), hull)
    _, sep = is_in_hull((2, 0), hull)
    assert not sep.verify((F(1, 2), F(1, 2)), hull)


@settings(max_examples=60)
@given(point_sets(max_dim=3, max_points=8), st.data())
def test_is_in_hull_matches_caratheodory(ps, data):
    dim, pts = ps
    hull = PolytopeV(pts, dim)
    q = data.draw(st.tuples(*[small_rationals()] * dim))
    inside, cert = is_in_hull(q, hull)
    assert inside == oracles.in_hull_by_caratheodory(q, hull)
    assert cert.verify(q, hull)


# ---------------------------------------------------------------- extremal subset

def test_midpoint_removed():
    out = extremal_subset(PolytopeV([(0, 0), (1, 1), (F(1, 2), F(1, 2))]))
    assert set(out.vertices) == {(0, 0), (1, 1)}


def test_empty_and_duplicates():
    assert len(extremal_subset(PolytopeV([], 3))) == 0
    out = extremal_subset(PolytopeV([(1, 2), (1, 2), (3, 4), (3, 4)]))
    assert set(out.vertices) == {(1, 2), (3, 4)}


def test_all_nbts_vertices_extremal():
    labels = cr.deterministic_labels() + cr.pr_like_labels()
    pts = [cr.to_coords(lab.correlation()) for lab in labels]
    assert len(set(pts)) == 24
    hull = PolytopeV(pts)
    # oracle: each vertex lies outside the hull of the other 23
    for p in pts:
        inside, cert = is_in_hull(p, PolytopeV([v for v in pts if v != p]))
        assert not inside and cert.verify(p, PolytopeV([v for v in pts if v != p]))
    assert set(extremal_subset(hull).vertices) == set(pts)


@settings(max_examples=60)
@given(point_sets(max_dim=3, max_points=9), st.randoms(use_true_random=False))
def test_extremal_subset_idempotent_order_free_and_matches_lp(ps, rnd):
    dim, pts = ps
    V = PolytopeV(pts, dim)
    ext = extremal_subset(V)
    assert set(extremal_subset(ext).vertices) == set(ext.vertices)
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert set(extremal_subset(PolytopeV(shuffled, dim)).vertices) == set(ext.vertices)
    assert set(extremal_subset_lp(V).vertices) == set(ext.vertices)


@settings(max_examples=40)
@given(point_sets(max_dim=3, max_points=9))
def test_extremality_certificates_verify(ps):
    dim, pts = ps
    V = PolytopeV(pts, dim)
    certs = extremality_certificates(V)
    ext = set(extremal_subset(V).vertices)
    for p, cert in certs.items():
        rest = PolytopeV([v for v in V.vertices if v != p], dim)
        assert cert.verify(p, rest)
        assert (cert.kind is CertificateKind.SEPARATING_HYPERPLANE) == (p in ext)


# ---------------------------------------------------------------- facets and vertices

def test_unit_square_facets(unit_square):
    h = hull_facets(unit_square)
    assert len(h.inequalities) == 4 and not h.equalities
    expected = {Inequality((1, 0), 0).key(), Inequality((0, 1), 0).key(),
                Inequality((1, 0), 1, LE).key(), Inequality((0, 1), 1, LE).key()}
    assert {i.key() for i in h.inequalities} == expected


def test_segment_facets():
    h = hull_facets(PolytopeV([(0,), (1,)]))
    assert {i.key() for i in h.inequalities} == {Inequality((1,), 0).key(), Inequality((1,), 1, LE).key()}


def test_single_point_only_equalities():
    h = hull_facets(PolytopeV([(1, 2)]))
    assert not h.inequalities
    assert len(h.equalities) == 2
    assert hrep_vertices(h).vertices == ((1, 2),)


def test_lower_dimensional_hull_reports_equalities():
    h = hull_facets(PolytopeV([(0, 0, 0), (1, 1, 1)]))
    assert len(h.equalities) == 2 and len(h.inequalities) == 2
    assert set(hrep_vertices(h).vertices) == {(0, 0, 0), (1, 1, 1)}


def test_unit_square_vertices(unit_square):
    h = hull_facets(unit_square)
    assert set(hrep_vertices(h).vertices) == set(unit_square.vertices)


def test_infeasible_and_unbounded_reported():
    empty = PolytopeH([Inequality((1,), 1), Inequality((1,), 0, LE)])
    with pytest.raises(Infeasible):
        hrep_vertices(empty)
    with pytest.raises(Infeasible):
        hrep_vertices(PolytopeH([], [Inequality((1, 1), 1, EQ), Inequality((1, 1), 2, EQ)], 2))
    half_line = PolytopeH([Inequality((1, 0), 0), Inequality((0, 1), 0), Inequality((0, 1), 1, LE)])
    with pytest.raises(Unbounded):
        hrep_vertices(half_line)
    strip = PolytopeH([Inequality((0, 1), 0), Inequality((0, 1), 1, LE)])
    with pytest.raises(Unbounded):
        hrep_vertices(strip)


def test_weak_nbts_hrep_gives_24_vertices():
    from nbtspoly.catalog import coordinate_hrep
    V = hrep_vertices(coordinate_hrep(cr.TimeOrdering.WEAK))
    # cross-check against the reduction of the known vertex families
    fams = [cr.to_coords(lab.correlation()) for lab in cr.deterministic_labels() + cr.pr_like_labels()]
    assert len(V) == 24
    assert set(V.vertices) == set(extremal_subset(PolytopeV(fams)).vertices)


def test_alice_first_marginal_hrep_vertex_count():
    from nbtspoly.catalog import coordinate_hrep
    h = coordinate_hrep(cr.TimeOrdering.ALICE_FIRST)
    V = hrep_vertices(h)
    assert set(V.vertices) == oracles.vertices_by_enumeration(h)
    assert len(V) == 28


@pytest.mark.parametrize("order", ["maxcutoff", "mincutoff", "index"])
def test_dd_orderings_agree(order):
    rng = random.Random(7)
    pts = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(15)]
    rows = [list(p) + [1] for p in pts]
    ref = set(dd.extreme_rays(rows, order="maxcutoff"))
    assert set(dd.extreme_rays(rows, order=order)) == ref


def test_dd_rejects_non_pointed_cone():
    with pytest.raises(ValueError):
        dd.extreme_rays([[1, 0, 0], [0, 1, 0]])


def test_dd_large_entries_use_exact_integers():
    big = 10 ** 12
    rows = [[big, 0, 1], [0, big, 1], [-big, 0, big], [0, -big, big], [0, 0, 1]]
    rays = dd.extreme_rays(rows)
    for r in rays:
        assert all(sum(a * b for a, b in zip(row, r)) >= 0 for row in rows)


@settings(max_examples=50)
@given(point_sets(max_dim=4, max_points=10))
def test_round_trip_and_saturation(ps):
    dim, pts = ps
    V = PolytopeV(pts, dim)
    H = hull_facets(V)
    ext = extremal_subset(V)
    back = hrep_vertices(H)
    assert set(back.vertices) == set(ext.vertices)
    assert {c.key() for c in hull_facets(back).constraints()} == {c.key() for c in H.constraints()}
    d = affine_dimension(V)
    for f in H.inequalities:
        assert all(f.slack(v) >= 0 for v in V.vertices)
        tight = PolytopeV([v for v in ext.vertices if f.slack(v) == 0], dim)
        assert affine_dimension(tight) == d - 1
    for e in H.equalities:
        assert all(e.slack(v) == 0 for v in V.vertices)


@settings(max_examples=50)
@given(point_sets(max_dim=3, max_points=10), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_lp_over_hull_equals_vertex_maximum(ps, obj):
    dim, pts = ps
    obj = obj[:dim]
    V = PolytopeV(pts, dim)
    H = hull_facets(V)
    for sense in ("max", "min"):
        res = lp_solve(obj, H, sense)
        assert res.value == oracles.optimum_by_vertices(obj, V.vertices, sense)
