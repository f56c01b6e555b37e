import sys

import pytest
from hypothesis import strategies as st

from twistlink.gauss import BAR, CrossPass, TwistedCode, parse_code

TREFOIL = "(O1+ U2+ O3+ U1+ O2+ U3+)"
VIRTUAL_TREFOIL = "(O1+ O2+ U1+ U2+)"


@st.composite
def codes(draw, max_crossings=5, max_bars=4, max_components=3):
    """Valid codes: shuffled passes and bars cut into components."""
    n = draw(st.integers(0, max_crossings))
    b = draw(st.integers(0, max_bars))
    k = draw(st.integers(1, max_components))
    ids = draw(st.lists(st.integers(1, 40), min_size=n, max_size=n, unique=True))
    syms = [BAR] * b
    for c in ids:
        sign = draw(st.sampled_from((1, -1)))
        syms += [CrossPass(c, True, sign), CrossPass(c, False, sign)]
    syms = draw(st.permutations(syms))
    cuts = sorted(draw(st.lists(st.integers(0, len(syms)), min_size=k - 1, max_size=k - 1)))
    bounds = (0, *cuts, len(syms))
    return TwistedCode(tuple(tuple(syms[bounds[i]:bounds[i + 1]]) for i in range(k)))


@pytest.fixture
def trefoil():
    return parse_code(TREFOIL)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    report = getattr(module, "REPORT", None)
    if not report:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(report):
        terminalreporter.write_line(report[number])
