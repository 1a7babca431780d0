import sys
from fractions import Fraction

import pytest

from azext.equivariance import GroupAction, compose_actions, solve_conjugator
from azext.funcfield import BiPoly, CurvePoly
from azext.scalars import UniPoly
from azext.tautological import build_symbol, make_point, parse_word

FIG8_TEXT = "-Ig^2*Igh + 2*Ig^2 + Igh^2 - Igh - 1"
RELATOR = "h^-1 g^-1 h g h^-1 g h g^-1 h^-1 g"


def fig8_bipoly() -> BiPoly:
    x, y = BiPoly.x(), BiPoly.y()
    return -(x**2) * y + 2 * x**2 + y**2 - y - 1


@pytest.fixture(scope="session")
def curve():
    return CurvePoly(fig8_bipoly(), ("Ig", "Igh"))


@pytest.fixture(scope="session")
def setup(curve):
    return build_symbol(curve)


@pytest.fixture(scope="session")
def X(curve):
    return curve.x()


@pytest.fixture(scope="session")
def Y(curve):
    return curve.y()


@pytest.fixture(scope="session")
def rho():
    return GroupAction("rho", parse_word("g^-1 h g"), parse_word("h g^-1 h g h^-1"))


@pytest.fixture(scope="session")
def sigma():
    return GroupAction("sigma", parse_word("g^-1"), parse_word("g^-2 h^-1 g^2"))


@pytest.fixture(scope="session")
def rho_sigma(rho, sigma):
    return compose_actions(rho, sigma, "rho_sigma")


@pytest.fixture(scope="session")
def conjugators(setup, rho, sigma, rho_sigma):
    return {a.name: solve_conjugator(setup, a) for a in (rho, sigma, rho_sigma)}


@pytest.fixture(scope="session")
def P(curve):
    """The excluded point Ig^2 = 5, Igh = 3 (root +sqrt 5)."""
    return make_point(curve, UniPoly([-5, 0, 1]), UniPoly([3]), "plus")


@pytest.fixture(scope="session")
def ref_c_rho(setup, X, Y):
    d = Y * Y - 3 * Y + 3
    return setup.algebra.elem(0, (-4 * Y * Y + 16 * Y - 16) / d, X * (-Y * Y + 5 * Y - 7) / d, 1)


@pytest.fixture(scope="session")
def ref_c_sigma(setup, X, Y):
    d = Y * Y - Y - 1
    return setup.algebra.elem(0, 0, X * (-Y * Y + 3 * Y - 3) / d, 1)


half = Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
