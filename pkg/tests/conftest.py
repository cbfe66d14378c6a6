from fractions import Fraction

import pytest
from hypothesis import strategies as st

from derivops.catalog import get_entry, rc_model_2
from derivops.parsing import parse_polynomial
from derivops.poly import AlgebraContext, Polynomial

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def kx():
    return AlgebraContext.of("x")


@pytest.fixture
def kxy():
    return AlgebraContext.of("x", "y")


@pytest.fixture
def P():
    """Parse a literal in the given context: P("x^2", ctx)."""
    return parse_polynomial


@pytest.fixture(scope="session")
def novikov():
    return get_entry("novikov").operation


@pytest.fixture(scope="session")
def poisson1():
    return get_entry("poisson").operation


@pytest.fixture(scope="session")
def rc2():
    return rc_model_2()


coefficients = st.one_of(
    st.integers(-20, 20),
    st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9)),
)


def polynomials(ctx: AlgebraContext, max_exp: int = 3, max_terms: int = 5):
    exps = st.tuples(*[st.integers(0, max_exp)] * ctx.nvars)
    return st.dictionaries(exps, coefficients, max_size=max_terms).map(
        lambda terms: Polynomial(ctx, terms))
