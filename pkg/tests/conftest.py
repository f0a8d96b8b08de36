import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the JIT kernels once so timed sections measure steady state."""
    from chamberconn.complex import cycle_graph
    from chamberconn.connectivity import liu_check, local_connectivity

    G = cycle_graph(6)
    liu_check(G, 2)
    local_connectivity(G, 0, 3)


@pytest.fixture
def acceptance_line():
    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
