import pytest

from heun192.numerics import solution_table

ACCEPTANCE_LINES = []


def record(criterion, description, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def heun_table():
    return list(solution_table(4))


@pytest.fixture(scope="session")
def kummer_table():
    return list(solution_table(3))
