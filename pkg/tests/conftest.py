import pytest

from helpers import ACCEPTANCE_LINES, DEMO_VALUES
from lcuprep.encoding import AmplitudeSpec


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def demo_spec():
    return AmplitudeSpec(DEMO_VALUES, 2)
