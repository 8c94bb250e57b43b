from fractions import Fraction

import pytest
from hypothesis import strategies as st

from grassmann_ontic.grassmann import GENERATORS, ExactComplex, GrassmannElement
from grassmann_ontic.weyl import BlochVector

ACCEPTANCE_LINES = {}


def rationals(lo=-1, hi=1, max_den=12):
    return st.fractions(min_value=Fraction(lo), max_value=Fraction(hi), max_denominator=max_den)


@st.composite
def bloch_vectors(draw, max_den=12):
    a = draw(rationals(max_den=max_den))
    b = draw(rationals(max_den=max_den))
    c = draw(rationals(max_den=max_den))
    scale = 1
    n = a * a + b * b + c * c
    while n / (scale * scale) > 1:
        scale += 1
    return BlochVector(a / scale, b / scale, c / scale)


_MONOS = [(), ("p",), ("q",), ("r",), ("p", "q"), ("p", "r"), ("q", "r"), ("p", "q", "r")]


@st.composite
def elements(draw):
    terms = {}
    for mono in _MONOS:
        if draw(st.booleans()):
            terms[mono] = ExactComplex(draw(rationals(-2, 2, 6)), draw(rationals(-2, 2, 6)))
    return GrassmannElement(terms)


generator_words = st.lists(st.sampled_from(GENERATORS), max_size=4)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if name.startswith("test_criterion_"):
        num = int(name.split("_")[2])
        ACCEPTANCE_LINES[num] = (name, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        name, ok = ACCEPTANCE_LINES[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({name})")


@pytest.fixture
def half():
    return Fraction(1, 2)
