import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def series_st(draw, min_order=0, max_order=10, unit=False, offset=None):
    """Integer-step FormalSeries with small rational coefficients."""
    from lerchmock.series import FormalSeries

    n = draw(st.integers(min_order, max_order))
    coeffs = draw(st.lists(small_fracs, min_size=n + 1, max_size=n + 1))
    if unit:
        coeffs[0] = Fraction(1)
    off = draw(st.integers(-3, 3)) if offset is None else offset
    return FormalSeries.from_coeffs(coeffs, offset=off)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES):
            terminalreporter.write_line(line)
