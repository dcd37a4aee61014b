import pytest

from f2hoch.algebra import build_table, paper_presentation
from f2hoch.hochschild import koszul_window
from f2hoch.resolutions import koszul_spaces

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table6():
    return build_table(paper_presentation(), 6)


@pytest.fixture(scope="session")
def kd6(table6):
    return koszul_spaces(table6, 6)


@pytest.fixture(scope="session")
def window31(table6, kd6):
    return koszul_window(table6, kd6, 3, -1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
