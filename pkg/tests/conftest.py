from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def emit(criterion: int, ok: bool, detail: str) -> None:
        line = f"[acceptance {criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def skew_matrices(draw, min_n=2, max_n=5, max_abs=4, complete=False):
    n = draw(st.integers(min_n, max_n))
    lo = 1 if complete else 0
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.integers(lo, max_abs)) * draw(st.sampled_from((1, -1)))
            m[i][j], m[j][i] = x, -x
    return tuple(tuple(r) for r in m)


@st.composite
def sequences(draw, n, max_len=6):
    return tuple(draw(st.lists(st.integers(1, n), max_size=max_len)))
