import random

import pytest

from tpkernel.graph import Graph


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def graph_of(n: int, edges: str) -> Graph:
    """``graph_of(4, "01 12 23")`` builds P4 on vertices 0..3."""
    return Graph.from_edges(n, [(int(e[0]), int(e[1])) for e in edges.split()])


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
