import pytest
from hypothesis import strategies as st

# (criterion, verdict, detail) lines recorded by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE_LINES:
        tail = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}{tail}")


@st.composite
def generators(draw, max_size=6):
    """Arbitrary generator pairs (possibly inconsistent) on a small universe."""
    n = draw(st.integers(1, max_size))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    coincide = draw(st.frozensets(pair, max_size=n * 2))
    precede = draw(st.frozensets(pair, max_size=n * 2))
    return n, coincide, precede


@pytest.fixture(scope="session")
def structures3():
    from chronorefine.order import enumerate_structures

    return list(enumerate_structures(3))
