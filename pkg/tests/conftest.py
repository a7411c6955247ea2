import pytest

from eulertours.graph import Multigraph


@pytest.fixture
def three_cycle():
    return Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def bidirected_triangle():
    return Multigraph.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)])


@pytest.fixture
def double_arc_pair():
    return Multigraph.from_pairs(2, [(0, 1), (0, 1), (1, 0), (1, 0)])


ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Log one pass/fail line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])

    def _record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append((criterion, line))
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
