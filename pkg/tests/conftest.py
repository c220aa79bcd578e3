import random
import warnings

import pytest
from hypothesis import settings, strategies as st

from senate_power.game import WeightedVotingGame
from senate_power.senate import load_dataset

ACCEPTANCE_LINES: list[str] = []

# exact-arithmetic examples vary a lot in cost; timing is checked in acceptance
settings.register_profile("repo", deadline=None)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def dataset():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        return load_dataset()


@st.composite
def games(draw, max_voters=8, max_weight=9, min_voters=1):
    weights = draw(
        st.lists(st.integers(0, max_weight), min_size=min_voters, max_size=max_voters)
    )
    if sum(weights) == 0:
        weights[draw(st.integers(0, len(weights) - 1))] = draw(st.integers(1, max_weight))
    quota = draw(st.integers(1, sum(weights)))
    return WeightedVotingGame(quota, tuple(weights))


def random_game(rng: random.Random, max_voters: int, max_weight: int = 12) -> WeightedVotingGame:
    n = rng.randint(1, max_voters)
    weights = [rng.randint(0, max_weight) for _ in range(n)]
    if sum(weights) == 0:
        weights[rng.randrange(n)] = rng.randint(1, max_weight)
    return WeightedVotingGame(rng.randint(1, sum(weights)), tuple(weights))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
