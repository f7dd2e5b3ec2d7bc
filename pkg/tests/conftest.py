import pytest

from bsdecomp import BettiTable, betti_table, power

from reference_values import path_edge_ideal

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def path_ideal():
    return path_edge_ideal()


@pytest.fixture(scope="session")
def path_tables(path_ideal):
    """Memoized beta(I^k) for the path edge ideal, shared across the session."""
    cache: dict[int, BettiTable] = {}

    def get(k: int) -> BettiTable:
        if k not in cache:
            cache[k] = betti_table(power(path_ideal, k))
        return cache[k]

    return get


@pytest.fixture
def acceptance_report():
    def note(line: str) -> None:
        _acceptance_lines.append(line)

    return note


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
