from pathlib import Path

import pytest

from essnormal.idealops import Ideal
from essnormal.polyalg import parse_polynomial

DATA = Path(__file__).parent / "data"


def ideal(gens, nvars):
    return Ideal([parse_polynomial(g, nvars) for g in gens], nvars)


def poly(text, nvars):
    return parse_polynomial(text, nvars)


@pytest.fixture
def data_dir():
    return DATA


# named ideals reused across modules
EX47 = (["(z1 - z2)^2", "z3*(z1 + z2)", "z3^2"], 3)
EX48 = (["(z1 - z2)^2", "z3*(z1 - z2)", "z3^2"], 3)
DOUBLE_LINE = (["z1^2"], 2)
COND_A = (["z1 - z2", "z3^2 - 1/2*z2*z3"], 3)
DIAGONAL = (["z1 - z2"], 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
