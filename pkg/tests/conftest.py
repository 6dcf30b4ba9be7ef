from pathlib import Path

import pytest

from ecaffine.golden import GoldenStore

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def goldens() -> GoldenStore:
    return GoldenStore.load(FIXTURES / "goldens.json")


# one line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
