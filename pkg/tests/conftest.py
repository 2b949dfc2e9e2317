from __future__ import annotations

from fractions import Fraction as F

import pytest

from tdpairs import FieldConfig, Matrix, build_quartet, verify_tridiagonal_pair

# lines printed by the acceptance tests, replayed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

E1_A = Matrix([[F(1, 2), 0], [1, 2]])
E1_ASTAR = Matrix([[2, 1], [0, F(1, 2)]])


@pytest.fixture
def cfg() -> FieldConfig:
    return FieldConfig(F(2))


@pytest.fixture
def e1_pair(cfg):
    return verify_tridiagonal_pair(E1_A, E1_ASTAR, cfg).pair


@pytest.fixture
def e1_quartet(e1_pair):
    return build_quartet(e1_pair)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
