from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fractions(lo=0, hi=1, denom=64, open_lo=True):
    """Multiples of ``1/denom`` in ``(lo, hi]`` (or ``[lo, hi]``)."""
    a = int(lo * denom) + (1 if open_lo else 0)
    b = int(hi * denom)
    return st.integers(a, b).map(lambda k: Fraction(k, denom))


@pytest.fixture
def F():
    return Fraction


#: criterion number -> (passed, summary), filled in by the acceptance tests
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
