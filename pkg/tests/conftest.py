from fractions import Fraction

from hypothesis import strategies as st

from courant_tensorial.poly import Poly3, UniPoly

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))
exponents = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))


@st.composite
def polys(draw, max_terms=6, max_exp=4):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * 3), small_rationals, max_size=max_terms))
    return Poly3(terms)


@st.composite
def unipolys(draw, min_degree=0, max_degree=4):
    coeffs = draw(st.lists(small_rationals, min_size=min_degree + 1, max_size=max_degree + 1))
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return UniPoly(coeffs)


# -- acceptance summary: one line per criterion ---------------------------------

_ACCEPTANCE: dict[int, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[number] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        verdict, seconds = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  ({seconds:.2f} s)")
