import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from horikawa.algebra.bivariate import ChartPolynomial
from horikawa.algebra.fields import QQ, gf

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


@st.composite
def polynomials(draw, field=None, variables=("u", "v"), max_deg=3, max_terms=5):
    F = field if field is not None else gf(draw(st.integers(1, 4)))
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        m = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        if F is QQ:
            terms[m] = QQ.element(draw(st.integers(-4, 4)))
        else:
            terms[m] = draw(st.integers(0, F.order - 1))
    return ChartPolynomial(F, variables, terms)
