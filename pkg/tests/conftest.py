from fractions import Fraction

import numpy as np
import pytest

from consheaf import GradedBarcode, Interval


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def bc(*bars, field=2):
    """``bc("[0,1)", ("(1,2]", 1), ("[0,1)", 0, 2))``"""
    out = []
    for b in bars:
        if isinstance(b, str):
            b = (b,)
        I = Interval.parse(b[0])
        out.append((I, *b[1:]) if len(b) == 3 else (I, b[1] if len(b) > 1 else 0, 1))
    return GradedBarcode(out, field)


Q = Fraction


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in CRITERIA:
            if name in RESULTS:
                terminalreporter.write_line(RESULTS[name])
