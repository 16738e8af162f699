import pytest

from app.services.fixpoint.policy import ConvergencePolicy
from app.services.syntax.parser import parse_program
from tests.factories import P1_TEXT, P2_TEXT, P3_TEXT, P4_TEXT


@pytest.fixture
def p1():
    """Positive program: r <- 0.3 \\/ (s /\\ 0.6). s <- s."""
    return parse_program(P1_TEXT)


@pytest.fixture
def p2():
    """Program with infinitely many minimal models p + q = 1."""
    return parse_program(P2_TEXT)


@pytest.fixture
def p3():
    """Program whose AW fixpoints include one that is not a partial stable fixpoint."""
    return parse_program(P3_TEXT)


@pytest.fixture
def p4():
    """p <- p. p <- ~p."""
    return parse_program(P4_TEXT)


@pytest.fixture
def exact():
    return ConvergencePolicy.exact()
