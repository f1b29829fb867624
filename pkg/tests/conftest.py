import sys

import pytest

from affcell import groebner

# Every basis built anywhere in the suite is checked against the reduced
# Groebner basis invariants (criterion 8 holds as a global postcondition).
GB_LOG = {"checked": 0, "failures": []}


def _check(gb, generators):
    GB_LOG["checked"] += 1
    problems = groebner.check_groebner_basis(gb, generators)
    if problems:
        GB_LOG["failures"].append((gb, generators, problems))


@pytest.fixture(autouse=True)
def groebner_postcondition():
    before = len(GB_LOG["failures"])
    groebner.add_observer(_check)
    try:
        yield
    finally:
        groebner.remove_observer(_check)
    new = GB_LOG["failures"][before:]
    assert not new, f"unsound Groebner basis: {new[0][2]}"


def pytest_terminal_summary(terminalreporter):
    test_acceptance = sys.modules.get("tests.test_acceptance")
    if test_acceptance is not None and test_acceptance.RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in test_acceptance.summary_lines():
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"groebner postcondition: {GB_LOG['checked']} bases checked, "
        f"{len(GB_LOG['failures'])} failures")
