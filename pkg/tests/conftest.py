import pytest
from hypothesis import strategies as st

from hookcal.trees import EMPTY

ACCEPTANCE_LINES: list[str] = []


def shapes(max_leaves: int = 12):
    """Random binary tree shapes as nested tuples."""
    return st.recursive(
        st.just(EMPTY),
        lambda children: st.tuples(children, children),
        max_leaves=max_leaves,
    )


def nonempty_shapes(max_leaves: int = 12):
    return shapes(max_leaves).filter(bool)


@pytest.fixture
def acceptance_line():
    def record(name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
