import numpy as np
import pytest

from kantian.analysis import random_games
from kantian.game_core import BimatrixGame, SymmetricGame

# Example game whose affine image is the zero-sum game below. The (1, 1)
# entry for the row player is -12: that is the value mapped to -1 by
# x -> x / 2 + 5.
GENERAL_SUM_GAME = BimatrixGame([[-14, -2], [-4, -12]], [[15, -3], [0, 12]])
ZERO_SUM_GAME = BimatrixGame([[-2, 4], [3, -1]], [[2, -4], [-3, 1]])

# P(X + Y > 2 max(Z, W)) for i.i.d. uniform [0, 1] variables, frozen from the
# quadrature in test_analysis.test_quadrature_oracle; equals 7/24.
P_ADVANTAGE_UNIFORM = 0.2916666666666667

PD = SymmetricGame(3, 0, 5, 1)
BOS = SymmetricGame(1, 5, 3, 1)


@pytest.fixture(scope="session")
def games_1000():
    return random_games(seed=20240601, n=1000, low=-10.0, high=10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        measured = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        status = "PASS" if rep.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] {title}" + (f"  ({measured})" if measured else ""))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
