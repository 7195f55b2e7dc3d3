"""The named correlation polytopes and the inequality families that cut them.

All polytopes live in the 8-coordinate space of :mod:`nbtspoly.correlations`.
Builds are cached; the returned values are immutable.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import correlations as cr
from .correlations import (BITS, INPUTS, Correlation, TimeOrdering,
                           marginal_a_form, marginal_b_form, prob_form, to_coords)
from .geometry import (EQ, GE, LE, Certificate, Inequality, PolytopeH, PolytopeV,
                       affine_dimension, extremal_subset, hrep_vertices,
                       hull_facets, is_in_hull)

NBTS = "nbts"
ALICE_FIRST = "alice-first"
BOB_FIRST = "bob-first"
SIMULTANEOUS = "simultaneous"
DEFINITE_GLOBAL = "definite-global"
SET_Q = "set-q"
ALICE_FIRST_MARGINAL = "alice-first-marginal"
BOB_FIRST_MARGINAL = "bob-first-marginal"

POLYTOPE_NAMES = (NBTS, ALICE_FIRST, BOB_FIRST, SIMULTANEOUS, DEFINITE_GLOBAL, SET_Q,
                  ALICE_FIRST_MARGINAL, BOB_FIRST_MARGINAL)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UnknownPolytope(ValueError):
    pass


@dataclass(frozen=True)
class NamedPolytope:
    name: str
    v_description: PolytopeV
    labels: tuple[str, ...]
    h_description: PolytopeH
    dimension: int
    q: Optional[Fraction] = None
    candidates: int = 0

    @property
    def title(self) -> str:
        return f"{self.name}(q={self.q})" if self.q is not None else self.name

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.v_description.vertices

    def label_of(self, point) -> str:
        return dict(zip(self.vertices, self.labels))[tuple(point)]

    def labelled(self) -> list[tuple[str, tuple[Fraction, ...]]]:
        return list(zip(self.labels, self.vertices))


# ---------------------------------------------------------------- constraint systems

def _ge_from_form(form, label: str = "") -> Inequality:
    """``form >= 0`` as an Inequality."""
    coeffs, const = form
    return Inequality(coeffs, -const, GE, label)


def table_hrep(ordering: TimeOrdering) -> PolytopeH:
    """Regime in the 16-entry table space: nonnegativity, normalisation, NBTS equalities."""
    ineqs = []
    for a, b, x, y in itertools.product(BITS, repeat=4):
        e = [_ZERO] * 16
        e[cr.index(a, b, x, y)] = _ONE
        ineqs.append(Inequality(tuple(e), _ZERO, GE, f"p({a},{b}|{x},{y}) >= 0"))
    eqs = []
    for x, y in INPUTS:
        e = [_ZERO] * 16
        for a, b in INPUTS:
            e[cr.index(a, b, x, y)] = _ONE
        eqs.append(Inequality(tuple(e), _ONE, EQ, f"sum_ab p(a,b|{x},{y}) = 1"))
    for teq in cr.regime_equalities(ordering):
        eqs.append(Inequality(teq.coefficients(), _ZERO, EQ, teq.label))
    return PolytopeH(ineqs, eqs, 16)


def coordinate_hrep(ordering: TimeOrdering) -> PolytopeH:
    """The same regime in coordinates: the 16 reconstructed entries are
    nonnegative, plus the extra equality of a definite ordering."""
    ineqs = [_ge_from_form(prob_form(a, b, x, y), f"p({a},{b}|{x},{y}) >= 0")
             for a, b, x, y in itertools.product(BITS, repeat=4)]
    eqs = []
    if ordering in (TimeOrdering.ALICE_FIRST, TimeOrdering.SIMULTANEOUS):
        eqs.append(Inequality((1, -1, 0, 0, 0, 0, 0, 0), 0, EQ, "p_A(0|y=0) = p_A(0|y=1)"))
    if ordering in (TimeOrdering.BOB_FIRST, TimeOrdering.SIMULTANEOUS):
        eqs.append(Inequality((0, 0, 1, -1, 0, 0, 0, 0), 0, EQ, "p_B(0|x=0) = p_B(0|x=1)"))
    return PolytopeH(ineqs, eqs, cr.N_COORDS)


def enumerate_regime(ordering: TimeOrdering) -> list[Correlation]:
    """Vertices of a regime's table-space H-description, as correlations."""
    return [Correlation(v) for v in hrep_vertices(table_hrep(ordering)).vertices]


# ---------------------------------------------------------------- generators

def parity_box(g: Sequence[int]) -> Correlation:
    """Uniform box with a xor b = g(x, y); ``g`` is the truth table (g00, g01, g10, g11)."""
    return Correlation.from_function(lambda a, b, x, y: Fraction(1, 2) if a ^ b == g[2 * x + y] else 0)


def _known_labels() -> dict[tuple, str]:
    known = {}
    for lab in cr.deterministic_labels() + cr.pr_like_labels() + cr.linear_labels():
        known[to_coords(lab.correlation())] = str(lab)
    for g in itertools.product(BITS, repeat=4):
        known.setdefault(to_coords(parity_box(g)), "par-" + "".join(map(str, g)))
    return known


KNOWN_LABELS = _known_labels()


def label_for(point, default: str = "") -> str:
    return KNOWN_LABELS.get(tuple(point), default)


def alice_first_generators() -> list[Correlation]:
    """Deterministic Alice-first strategies and the uniform parity boxes.

    With Alice first, ``a`` is fixed before any input while ``b`` may be any
    function of ``x``.  Parity boxes meet the simultaneous conditions, so
    every ordering realises them.
    """
    det = [cr.deterministic_vertex(al, be, 0, nu) for al, be, nu in itertools.product(BITS, repeat=3)]
    boxes = [parity_box(g) for g in itertools.product(BITS, repeat=4)]
    return det + boxes


def bob_first_generators() -> list[Correlation]:
    return [cr.swap_parties(c) for c in alice_first_generators()]


def _sorted(points: Iterable) -> list[tuple[Fraction, ...]]:
    return sorted(set(tuple(p) for p in points))


def _finish(name: str, points: Iterable, labels: dict | None = None, q=None, candidates: int = 0
            ) -> NamedPolytope:
    pts = _sorted(points)
    V = PolytopeV(pts, cr.N_COORDS)
    labels = labels or {}
    labs = tuple(labels.get(p) or label_for(p, f"v{i}") for i, p in enumerate(pts))
    return NamedPolytope(name, V, labs, hull_facets(V), affine_dimension(V), q, candidates)


def _reduce(correlations: Iterable[Correlation]) -> list[tuple[Fraction, ...]]:
    pts = PolytopeV([to_coords(c) for c in correlations], cr.N_COORDS)
    return list(extremal_subset(pts).vertices)


def parse_q(q) -> Fraction:
    try:
        q = Fraction(q)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f"q must be a rational number, got {q!r}") from None
    if not 0 <= q <= 1:
        raise ValueError(f"q = {q} is outside [0, 1]")
    return q


@functools.lru_cache(maxsize=None)
def _build(name: str, q: Optional[Fraction]) -> NamedPolytope:
    if name == NBTS:
        return _finish(name, [to_coords(c) for c in enumerate_regime(TimeOrdering.WEAK)])
    if name == SIMULTANEOUS:
        return _finish(name, [to_coords(c) for c in enumerate_regime(TimeOrdering.SIMULTANEOUS)])
    if name == ALICE_FIRST_MARGINAL:
        return _finish(name, [to_coords(c) for c in enumerate_regime(TimeOrdering.ALICE_FIRST)])
    if name == BOB_FIRST_MARGINAL:
        return _finish(name, [to_coords(c) for c in enumerate_regime(TimeOrdering.BOB_FIRST)])
    if name == ALICE_FIRST:
        gens = alice_first_generators()
        return _finish(name, _reduce(gens), candidates=len(gens))
    if name == BOB_FIRST:
        gens = bob_first_generators()
        return _finish(name, _reduce(gens), candidates=len(gens))
    if name == DEFINITE_GLOBAL:
        union = _build(ALICE_FIRST, None).vertices + _build(BOB_FIRST, None).vertices
        pts = extremal_subset(PolytopeV(union, cr.N_COORDS)).vertices
        return _finish(name, pts, candidates=len(union))
    if name == SET_Q:
        af = _build(ALICE_FIRST, None)
        bf = _build(BOB_FIRST, None)
        cands, labels = set_q_candidates(q, af, bf)
        pts = extremal_subset(PolytopeV(cands, cr.N_COORDS)).vertices
        return _finish(name, pts, labels, q, candidates=len(cands))
    raise UnknownPolytope(f"unknown polytope {name!r}; expected one of {', '.join(POLYTOPE_NAMES)}")


def set_q_candidates(q, af: NamedPolytope, bf: NamedPolytope) -> tuple[list, dict]:
    """All ordered-pair mixtures ``q*v + (1-q)*w`` with v from Alice-first,
    w from Bob-first.  Each distinct point is labelled by its first pair."""
    q = Fraction(q)
    cands = []
    labels: dict = {}
    for (lv, v), (lw, w) in itertools.product(af.labelled(), bf.labelled()):
        p = tuple(q * s + (1 - q) * t for s, t in zip(v, w))
        cands.append(p)
        if p not in labels:
            labels[p] = label_for(p) or f"{q}*{lv}+{1 - q}*{lw}"
    return cands, labels


def build(name: str, q=None) -> NamedPolytope:
    """Construct a named polytope; ``q`` is required for ``set-q`` only."""
    if name not in POLYTOPE_NAMES:
        raise UnknownPolytope(f"unknown polytope {name!r}; expected one of {', '.join(POLYTOPE_NAMES)}")
    if name == SET_Q:
        if q is None:
            raise ValueError("set-q needs a value of q")
        q = parse_q(q)
    else:
        q = None
    return _build(name, q)


# ---------------------------------------------------------------- inequality families

def _form_sum(*terms):
    coeffs = [_ZERO] * cr.N_COORDS
    const = _ZERO
    for w, (cs, k) in terms:
        coeffs = [u + w * v for u, v in zip(coeffs, cs)]
        const += w * k
    return tuple(coeffs), const


def novel_inequalities(all_outcomes: bool = False) -> list[Inequality]:
    """The eight definite-timing facets, at outcomes (a,b) = (0,0).

    For every input pair (x, y), with xb, yb the flipped inputs:

        p_A(a|y) + p_B(b|x) >= p(a,b|x,y) + p(a,b|xb,yb)
        p_A(a|y) + p_B(b|x) - p(a,b|x,yb) - p(a,b|xb,y) <= 1

    ``all_outcomes=True`` lists the variants for every (a, b) as well.  They
    are the same eight facets under other names: flipping an outcome permutes
    the family.
    """
    outcomes = INPUTS if all_outcomes else [(0, 0)]
    first, second = [], []
    for a, b in outcomes:
        for x, y in INPUTS:
            xb, yb = 1 - x, 1 - y
            lhs = _form_sum((1, marginal_a_form(a, y)), (1, marginal_b_form(b, x)))
            f = _form_sum((1, lhs), (-1, prob_form(a, b, x, y)), (-1, prob_form(a, b, xb, yb)))
            first.append(_ge_from_form(
                f, f"p_A({a}|{y}) + p_B({b}|{x}) >= p({a},{b}|{x},{y}) + p({a},{b}|{xb},{yb})"))
            g = _form_sum((-1, lhs), (1, prob_form(a, b, x, yb)), (1, prob_form(a, b, xb, y)))
            coeffs, const = g
            second.append(Inequality(coeffs, -const - 1, GE,
                                     f"p_A({a}|{y}) + p_B({b}|{x}) - [p({a},{b}|{x},{yb}) + p({a},{b}|{xb},{y})] <= 1"))
    return first + second


def q_inequalities(q) -> list[Inequality]:
    """Two-sided bounds on how much each marginal may move with the other's input:

        |p_A(0|0) - p_A(0|1)| <= 1 - q,   |p_B(0|0) - p_B(0|1)| <= q
    """
    q = parse_q(q)
    da = (1, -1, 0, 0, 0, 0, 0, 0)
    db = (0, 0, 1, -1, 0, 0, 0, 0)
    return [
        Inequality(da, 1 - q, LE, f"p_A(0|0) - p_A(0|1) <= {1 - q}"),
        Inequality(da, -(1 - q), GE, f"p_A(0|0) - p_A(0|1) >= {-(1 - q)}"),
        Inequality(db, q, LE, f"p_B(0|0) - p_B(0|1) <= {q}"),
        Inequality(db, -q, GE, f"p_B(0|0) - p_B(0|1) >= {-q}"),
    ]


SATISFIED = "satisfied"
SATURATED = "saturated"
VIOLATED = "violated"


@dataclass(frozen=True)
class InequalityVerdict:
    inequality: Inequality
    value: Fraction
    slack: Fraction

    @property
    def status(self) -> str:
        if self.slack > 0:
            return SATISFIED
        return SATURATED if self.slack == 0 else VIOLATED

    @property
    def deficit(self) -> Fraction:
        return max(-self.slack, _ZERO)


def evaluate_point(point, ineq: Inequality) -> InequalityVerdict:
    return InequalityVerdict(ineq, ineq.value(point), ineq.slack(point))


def evaluate_inequality(c: Correlation, ineq: Inequality) -> InequalityVerdict:
    """Exact slack of ``ineq`` at ``c``; rejects correlations without coordinates."""
    return evaluate_point(to_coords(c), ineq)


# ---------------------------------------------------------------- membership

@dataclass(frozen=True)
class MembershipReport:
    polytope: str
    inside: bool
    certificate: Certificate
    verified: bool
    violated_facets: tuple[Inequality, ...] = ()


def membership_point(point, polytope: NamedPolytope) -> MembershipReport:
    pt = tuple(Fraction(v) for v in point)
    inside, cert = is_in_hull(pt, polytope.v_description)
    violated = tuple(f for f in polytope.h_description.constraints() if not f.satisfied_by(pt))
    return MembershipReport(polytope.title, inside, cert, cert.verify(pt, polytope.v_description), violated)


def membership_report(c: Correlation, name: str, q=None) -> MembershipReport:
    """Is ``c`` a mixture of the named polytope's vertices?  Certificate attached."""
    return membership_point(to_coords(c), build(name, q))


# ---------------------------------------------------------------- GYNI exclusion

@dataclass(frozen=True)
class GyniEntry:
    label: str
    passes_weak: bool
    membership: MembershipReport
    violated_novel: tuple[Inequality, ...]
    violated_q: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GyniExclusionReport:
    entries: tuple[GyniEntry, ...]
    definite_vertices_valid: bool
    saturating_alice: dict
    saturating_bob: dict
    nbts_violators: dict

    @property
    def ok(self) -> bool:
        gyni = {str(lab) for lab in cr.gyni_labels()}
        return (
            all(e.passes_weak and not e.membership.inside and e.membership.verified
                and e.violated_novel and all(e.violated_q.values()) for e in self.entries)
            and self.definite_vertices_valid
            and all(self.saturating_alice[k] and self.saturating_bob[k] for k in self.saturating_alice)
            and set().union(*self.nbts_violators.values()) == gyni
            and all(v <= gyni for v in self.nbts_violators.values())
        )


def gyni_exclusion_report(qs: Iterable = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)
                          ) -> GyniExclusionReport:
    qs = [parse_q(q) for q in qs]
    dg = build(DEFINITE_GLOBAL)
    af = build(ALICE_FIRST)
    bf = build(BOB_FIRST)
    nb = build(NBTS)
    novel = novel_inequalities()
    entries = []
    for lab in cr.gyni_labels():
        c = lab.correlation()
        pt = to_coords(c)
        entries.append(GyniEntry(
            str(lab),
            cr.nbts_check(c, TimeOrdering.WEAK).passed,
            membership_point(pt, dg),
            tuple(i for i in novel if i.slack(pt) < 0),
            {q: tuple(i for i in q_inequalities(q) if i.slack(pt) < 0) for q in qs},
        ))
    valid = all(i.slack(v) >= 0 for i in novel for v in dg.vertices)
    sat_a = {i.label: tuple(l for l, v in af.labelled() if i.slack(v) == 0) for i in novel}
    sat_b = {i.label: tuple(l for l, v in bf.labelled() if i.slack(v) == 0) for i in novel}
    violators = {i.label: frozenset(l for l, v in nb.labelled() if i.slack(v) < 0) for i in novel}
    return GyniExclusionReport(tuple(entries), valid, sat_a, sat_b, violators)
