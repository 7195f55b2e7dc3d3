"""Bipartite temporal correlations p(a,b|x,y) with binary inputs and outputs.

Alice produces outcome ``a`` before receiving input ``x``; Bob produces ``b``
before receiving ``y``.  Tables are exact: every entry is a Fraction.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

BITS = (0, 1)
INPUTS = tuple(itertools.product(BITS, BITS))
_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)

COORD_NAMES = (
    "p_A(0|y=0)", "p_A(0|y=1)", "p_B(0|x=0)", "p_B(0|x=1)",
    "p(0,0|0,0)", "p(0,0|0,1)", "p(0,0|1,0)", "p(0,0|1,1)",
)
N_COORDS = len(COORD_NAMES)

NbtsPoint = tuple[Fraction, ...]


class InvalidCorrelation(ValueError):
    pass


class CorrelationParseError(ValueError):
    """Malformed correlation document; ``location`` names the offending part."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def index(a: int, b: int, x: int, y: int) -> int:
    return 8 * a + 4 * b + 2 * x + y


@dataclass(frozen=True)
class Correlation:
    """Conditional distribution p(a,b|x,y) as 16 exact entries.

    ``table[index(a, b, x, y)]`` holds p(a,b|x,y).
    """

    table: tuple[Fraction, ...]

    def __post_init__(self):
        t = tuple(Fraction(v) for v in self.table)
        if len(t) != 16:
            raise InvalidCorrelation(f"expected 16 entries, got {len(t)}")
        for a, b, x, y in itertools.product(BITS, repeat=4):
            v = t[index(a, b, x, y)]
            if not 0 <= v <= 1:
                raise InvalidCorrelation(f"p({a},{b}|{x},{y}) = {v} is outside [0, 1]")
        for x, y in INPUTS:
            total = sum(t[index(a, b, x, y)] for a in BITS for b in BITS)
            if total != 1:
                raise InvalidCorrelation(f"entries for (x,y)=({x},{y}) sum to {total}, not 1")
        object.__setattr__(self, "table", t)

    @classmethod
    def from_function(cls, f: Callable[[int, int, int, int], object]) -> "Correlation":
        t = [_ZERO] * 16
        for a, b, x, y in itertools.product(BITS, repeat=4):
            t[index(a, b, x, y)] = Fraction(f(a, b, x, y))
        return cls(tuple(t))

    def p(self, a: int, b: int, x: int, y: int) -> Fraction:
        return self.table[index(a, b, x, y)]

    def __str__(self) -> str:
        lines = []
        for x, y in INPUTS:
            cells = "  ".join(f"p({a},{b})={self.p(a, b, x, y)}" for a in BITS for b in BITS)
            lines.append(f"x={x} y={y}: {cells}")
        return "\n".join(lines)


def marginal_a(c: Correlation, a: int, x: int, y: int) -> Fraction:
    """p_A(a|x,y), Alice's outcome distribution at inputs (x, y)."""
    return c.p(a, 0, x, y) + c.p(a, 1, x, y)


def marginal_b(c: Correlation, b: int, x: int, y: int) -> Fraction:
    return c.p(0, b, x, y) + c.p(1, b, x, y)


# ---------------------------------------------------------------- regimes

class TimeOrdering(enum.Enum):
    WEAK = "weak"
    ALICE_FIRST = "alice-first"
    BOB_FIRST = "bob-first"
    SIMULTANEOUS = "simultaneous"

    @classmethod
    def parse(cls, name: str) -> "TimeOrdering":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown ordering {name!r}; expected one of "
                             f"{', '.join(o.value for o in cls)}") from None


@dataclass(frozen=True)
class TableEquality:
    """``sum(p[lhs]) = sum(p[rhs])`` over table entries given as (a,b,x,y)."""

    label: str
    lhs: tuple[tuple[int, int, int, int], ...]
    rhs: tuple[tuple[int, int, int, int], ...]

    def sides(self, c: Correlation) -> tuple[Fraction, Fraction]:
        return (sum((c.p(*k) for k in self.lhs), _ZERO),
                sum((c.p(*k) for k in self.rhs), _ZERO))

    def coefficients(self) -> tuple[Fraction, ...]:
        coeffs = [_ZERO] * 16
        for k in self.lhs:
            coeffs[index(*k)] += 1
        for k in self.rhs:
            coeffs[index(*k)] -= 1
        return tuple(coeffs)


def _a_marg(x, y):
    return tuple((0, b, x, y) for b in BITS)


def _b_marg(x, y):
    return tuple((a, 0, x, y) for a in BITS)


def _weak_equalities():
    # a cannot depend on x, b cannot depend on y
    eqs = [TableEquality(f"p_A(0|x=0,y={y}) = p_A(0|x=1,y={y})", _a_marg(0, y), _a_marg(1, y))
           for y in BITS]
    eqs += [TableEquality(f"p_B(0|x={x},y=0) = p_B(0|x={x},y=1)", _b_marg(x, 0), _b_marg(x, 1))
            for x in BITS]
    return eqs


_A_FIXED = TableEquality("p_A(0|x=0,y=0) = p_A(0|x=0,y=1)", _a_marg(0, 0), _a_marg(0, 1))
_B_FIXED = TableEquality("p_B(0|x=0,y=0) = p_B(0|x=1,y=0)", _b_marg(0, 0), _b_marg(1, 0))


def regime_equalities(ordering: TimeOrdering) -> list[TableEquality]:
    """Linear equalities on the table that define each time-ordering regime.

    Outcome 0 suffices: with normalisation the outcome-1 equalities follow.
    """
    eqs = _weak_equalities()
    if ordering in (TimeOrdering.ALICE_FIRST, TimeOrdering.SIMULTANEOUS):
        eqs.append(_A_FIXED)
    if ordering in (TimeOrdering.BOB_FIRST, TimeOrdering.SIMULTANEOUS):
        eqs.append(_B_FIXED)
    return eqs


@dataclass(frozen=True)
class Violation:
    equality: str
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        return f"{self.equality} fails: {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class CheckResult:
    ordering: TimeOrdering
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


def nbts_check(c: Correlation, ordering: TimeOrdering = TimeOrdering.WEAK) -> CheckResult:
    """Check every equality of the regime exactly; all failures are reported."""
    bad = []
    for eq in regime_equalities(ordering):
        lhs, rhs = eq.sides(c)
        if lhs != rhs:
            bad.append(Violation(eq.label, lhs, rhs))
    return CheckResult(ordering, tuple(bad))


# ---------------------------------------------------------------- vertex families

@dataclass(frozen=True)
class VertexLabel:
    family: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.family}-{''.join(map(str, self.params))}"

    @classmethod
    def parse(cls, text: str) -> "VertexLabel":
        family, _, bits = text.partition("-")
        sizes = {"det": 4, "gyni": 2, "pr": 3, "lin": 1}
        if family not in sizes or len(bits) != sizes[family] or set(bits) - {"0", "1"}:
            raise ValueError(f"not a vertex label: {text!r}")
        return cls(family, tuple(int(ch) for ch in bits))

    def correlation(self) -> Correlation:
        return {"det": deterministic_vertex, "gyni": gyni_vertex,
                "pr": pr_like_vertex, "lin": linear_vertex}[self.family](*self.params)


def deterministic_vertex(alpha: int, beta: int, mu: int, nu: int) -> Correlation:
    """a = mu*y xor alpha, b = nu*x xor beta with certainty."""
    return Correlation.from_function(
        lambda a, b, x, y: int(a == (mu * y) ^ alpha and b == (nu * x) ^ beta))


def gyni_vertex(alpha: int, beta: int) -> Correlation:
    """Each outcome guesses the other party's later input: a = y^alpha, b = x^beta."""
    return deterministic_vertex(alpha, beta, 1, 1)


def pr_like_vertex(gamma: int, delta: int, eps: int) -> Correlation:
    """Uniform on a xor b = (x^gamma)(y^delta) xor eps."""
    return Correlation.from_function(
        lambda a, b, x, y: _HALF if a ^ b == ((x ^ gamma) & (y ^ delta)) ^ eps else 0)


def linear_vertex(alpha: int) -> Correlation:
    return Correlation.from_function(lambda a, b, x, y: _HALF if a ^ b == x ^ y ^ alpha else 0)


def pr_box() -> Correlation:
    return pr_like_vertex(0, 0, 0)


def uniform() -> Correlation:
    return Correlation.from_function(lambda a, b, x, y: Fraction(1, 4))


def deterministic_labels(include_gyni: bool = True) -> list[VertexLabel]:
    out = []
    for alpha, beta, mu, nu in itertools.product(BITS, repeat=4):
        if mu and nu:
            if include_gyni:
                out.append(VertexLabel("gyni", (alpha, beta)))
        else:
            out.append(VertexLabel("det", (alpha, beta, mu, nu)))
    return out


def gyni_labels() -> list[VertexLabel]:
    return [VertexLabel("gyni", ab) for ab in INPUTS]


def pr_like_labels() -> list[VertexLabel]:
    return [VertexLabel("pr", p) for p in itertools.product(BITS, repeat=3)]


def linear_labels() -> list[VertexLabel]:
    return [VertexLabel("lin", (a,)) for a in BITS]


def named_correlation(name: str) -> Correlation:
    """Look up ``det-0101``, ``gyni-00``, ``pr-000``, ``lin-1``, ``pr-box`` or ``uniform``."""
    if name == "pr-box":
        return pr_box()
    if name == "uniform":
        return uniform()
    return VertexLabel.parse(name).correlation()


def mix(q, first: Correlation, second: Correlation) -> Correlation:
    """Entrywise ``q * first + (1 - q) * second``."""
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"mixing weight {q} is outside [0, 1]")
    return Correlation(tuple(q * u + (1 - q) * v for u, v in zip(first.table, second.table)))


def swap_parties(c: Correlation) -> Correlation:
    """Exchange the labs: p'(a,b|x,y) = p(b,a|y,x)."""
    return Correlation.from_function(lambda a, b, x, y: c.p(b, a, y, x))


# ---------------------------------------------------------------- coordinates

def to_coords(c: Correlation) -> NbtsPoint:
    """Embed a weak-NBTS correlation into the 8-coordinate space."""
    check = nbts_check(c, TimeOrdering.WEAK)
    if not check.passed:
        raise InvalidCorrelation(f"correlation signals backwards in time: {check.violations[0]}")
    return (
        marginal_a(c, 0, 0, 0), marginal_a(c, 0, 0, 1),
        marginal_b(c, 0, 0, 0), marginal_b(c, 0, 1, 0),
        c.p(0, 0, 0, 0), c.p(0, 0, 0, 1), c.p(0, 0, 1, 0), c.p(0, 0, 1, 1),
    )


AffineForm = tuple[tuple[Fraction, ...], Fraction]


def _unit(i: int) -> tuple[Fraction, ...]:
    return tuple(_ONE if k == i else _ZERO for k in range(N_COORDS))


def _combine(*terms: tuple[int, AffineForm]) -> AffineForm:
    coeffs = [_ZERO] * N_COORDS
    const = _ZERO
    for w, (cs, k) in terms:
        coeffs = [u + w * v for u, v in zip(coeffs, cs)]
        const += w * k
    return tuple(coeffs), const


_CONST_ONE: AffineForm = (tuple([_ZERO] * N_COORDS), _ONE)


def marginal_a_form(a: int, y: int) -> AffineForm:
    """p_A(a|y) as an affine function of the coordinates."""
    base = (_unit(y), _ZERO)
    return base if a == 0 else _combine((1, _CONST_ONE), (-1, base))


def marginal_b_form(b: int, x: int) -> AffineForm:
    base = (_unit(2 + x), _ZERO)
    return base if b == 0 else _combine((1, _CONST_ONE), (-1, base))


def prob_form(a: int, b: int, x: int, y: int) -> AffineForm:
    """p(a,b|x,y) as an affine function of the coordinates."""
    joint = (_unit(4 + 2 * x + y), _ZERO)
    pa = (_unit(y), _ZERO)
    pb = (_unit(2 + x), _ZERO)
    if (a, b) == (0, 0):
        return joint
    if (a, b) == (0, 1):
        return _combine((1, pa), (-1, joint))
    if (a, b) == (1, 0):
        return _combine((1, pb), (-1, joint))
    return _combine((1, _CONST_ONE), (-1, pa), (-1, pb), (1, joint))


def evaluate_form(form: AffineForm, point: Sequence) -> Fraction:
    coeffs, const = form
    return const + sum((c * v for c, v in zip(coeffs, point)), _ZERO)


def from_coords(point: Sequence) -> Correlation:
    """Rebuild the table from coordinates; rejects points whose entries leave [0, 1]."""
    pt = tuple(Fraction(v) for v in point)
    if len(pt) != N_COORDS:
        raise InvalidCorrelation(f"expected {N_COORDS} coordinates, got {len(pt)}")
    t = [_ZERO] * 16
    for a, b, x, y in itertools.product(BITS, repeat=4):
        v = evaluate_form(prob_form(a, b, x, y), pt)
        if not 0 <= v <= 1:
            raise InvalidCorrelation(f"coordinates give p({a},{b}|{x},{y}) = {v}, outside [0, 1]")
        t[index(a, b, x, y)] = v
    return Correlation(tuple(t))


def swap_coords(point: Sequence) -> NbtsPoint:
    """Coordinate image of :func:`swap_parties`."""
    p = tuple(Fraction(v) for v in point)
    return (p[2], p[3], p[0], p[1], p[4], p[6], p[5], p[7])


# ---------------------------------------------------------------- file format

def correlation_to_json(c: Correlation) -> dict:
    return {f"{x},{y}": {f"{a},{b}": str(c.p(a, b, x, y)) for a in BITS for b in BITS}
            for x, y in INPUTS}


def dumps_correlation(c: Correlation) -> str:
    return json.dumps(correlation_to_json(c), indent=2, sort_keys=True) + "\n"


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise CorrelationParseError(f"expected a rational string such as \"1/2\", got {raw!r}", where)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise CorrelationParseError(f"cannot read {raw!r} as an exact rational", where) from None


def correlation_from_json(doc) -> Correlation:
    if not isinstance(doc, dict):
        raise CorrelationParseError("top level must be an object keyed by \"x,y\"")
    expected = {f"{x},{y}" for x, y in INPUTS}
    if set(doc) != expected:
        extra = sorted(set(doc) - expected)
        missing = sorted(expected - set(doc))
        raise CorrelationParseError(f"input keys must be {sorted(expected)}; missing {missing}, unexpected {extra}")
    t = [_ZERO] * 16
    for x, y in INPUTS:
        key = f"{x},{y}"
        block = doc[key]
        if not isinstance(block, dict) or set(block) != {f"{a},{b}" for a in BITS for b in BITS}:
            raise CorrelationParseError("expected an object with keys \"0,0\", \"0,1\", \"1,0\", \"1,1\"",
                                        f"x,y={key}")
        total = _ZERO
        for a, b in INPUTS:
            where = f"x,y={key} a,b={a},{b}"
            v = _parse_rational(block[f"{a},{b}"], where)
            if not 0 <= v <= 1:
                raise CorrelationParseError(f"probability {v} is outside [0, 1]", where)
            t[index(a, b, x, y)] = v
            total += v
        if total != 1:
            raise CorrelationParseError(f"probabilities sum to {total}, not 1", f"x,y={key}")
    return Correlation(tuple(t))


def loads_correlation(text: str) -> Correlation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorrelationParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return correlation_from_json(doc)

