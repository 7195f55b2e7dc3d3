from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F = Fraction


def small_rationals():
    return st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2, 3]))


@st.composite
def point_sets(draw, max_dim=4, max_points=12):
    dim = draw(st.integers(1, max_dim))
    pts = draw(st.lists(st.tuples(*[small_rationals()] * dim), min_size=1, max_size=max_points))
    return dim, pts


@pytest.fixture(scope="session")
def unit_square():
    from nbtspoly.geometry import PolytopeV
    return PolytopeV([(0, 0), (1, 0), (0, 1), (1, 1)])


# one PASS/FAIL line per acceptance criterion, repeated after the test summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
