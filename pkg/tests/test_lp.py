from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from nbtspoly.geometry import (GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, DimensionMismatch,
                               Inequality, PolytopeH, lp_solve)
from nbtspoly.geometry.lp import simplex_standard
from nbtspoly.geometry.oracles import vertices_by_enumeration


def interval(lo, hi):
    return PolytopeH([Inequality((1,), lo, GE), Inequality((1,), hi, LE)])


def test_maximise_on_unit_interval():
    res = lp_solve([1], interval(0, 1), "max")
    assert res.status == OPTIMAL
    assert res.value == 1
    assert res.point == (1,)


def test_contradictory_bounds_infeasible():
    res = lp_solve([1], PolytopeH([Inequality((1,), 0, LE), Inequality((1,), 1, GE)]))
    assert res.status == INFEASIBLE


def test_unbounded_ray():
    res = lp_solve([1, 1], PolytopeH([Inequality((1, 0), 0), Inequality((0, 1), 0)]), "max")
    assert res.status == UNBOUNDED


def test_equalities_are_respected():
    h = PolytopeH([Inequality((1, 0), 0), Inequality((0, 1), 0)], [Inequality((1, 1), 1, "=")])
    res = lp_solve([1, 2], h, "max")
    assert res.value == 2 and res.point == (0, 1)


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatch):
        lp_solve([1, 2], interval(0, 1))


def test_beale_cycling_example_terminates():
    # classic instance on which the largest-coefficient rule cycles forever
    costs = [0, 0, 0, F(-3, 4), 20, F(-1, 2), 6]
    A = [
        [1, 0, 0, F(1, 4), -8, -1, 9],
        [0, 1, 0, F(1, 2), -12, F(-1, 2), 3],
        [0, 0, 1, 0, 0, 1, 0],
    ]
    status, value, z = simplex_standard(costs, A, [0, 0, 1])
    assert status == OPTIMAL
    assert all(v >= 0 for v in z)

    unit = [tuple(int(i == j) for j in range(7)) for i in range(7)]
    h = PolytopeH([Inequality(u, 0) for u in unit], [Inequality(tuple(r), b, "=") for r, b in zip(A, [0, 0, 1])])
    best = min(sum(F(c) * v for c, v in zip(costs, p)) for p in vertices_by_enumeration(h))
    assert value == best == F(-5, 4)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
       st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(0, 3)), max_size=4))
def test_optimum_matches_vertex_enumeration(obj, cuts):
    box = [Inequality((1, 0), -2), Inequality((-1, 0), -2), Inequality((0, 1), -2), Inequality((0, -1), -2)]
    extra = [Inequality((a, b), -c) for a, b, c in cuts if (a, b) != (0, 0)]
    h = PolytopeH(box + extra)
    verts = vertices_by_enumeration(h)
    for sense in ("max", "min"):
        res = lp_solve(obj, h, sense)
        if not verts:
            assert res.status == INFEASIBLE
            continue
        vals = [sum(F(c) * v for c, v in zip(obj, p)) for p in verts]
        assert res.value == (max(vals) if sense == "max" else min(vals))
        assert h.contains(res.point)
