import random

import pytest
from hypothesis import strategies as st

from secureic.problem import Problem


def random_problem(rng: random.Random, n: int, p_side: float = 0.5, p_prohibit: float = 0.3,
                   secure: bool = True) -> Problem:
    side, prohibited = [], []
    for i in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != i]
        A = [k for k in others if rng.random() < p_side]
        B = [k for k in others if k not in A]
        P = [k for k in B if rng.random() < p_prohibit] if secure else []
        side.append(A)
        prohibited.append(P)
    return Problem.from_lists(side, prohibited)


@st.composite
def problems(draw, min_n=1, max_n=5, secure=True):
    n = draw(st.integers(min_n, max_n))
    side, prohibited = [], []
    for i in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != i]
        flags = draw(st.lists(st.booleans(), min_size=len(others), max_size=len(others)))
        A = [k for k, f in zip(others, flags) if f]
        B = [k for k in others if k not in A]
        if secure and B:
            pf = draw(st.lists(st.booleans(), min_size=len(B), max_size=len(B)))
            P = [k for k, f in zip(B, pf) if f]
        else:
            P = []
        side.append(A)
        prohibited.append(P)
    return Problem.from_lists(side, prohibited)


@pytest.fixture
def rng():
    return random.Random(20240601)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
