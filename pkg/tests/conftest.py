import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from spherical_vassiliev.braidcore import BraidWord, pure_part

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def braid_words(draw, n=None, min_n=2, max_n=6, max_len=20):
    n = n or draw(st.integers(min_n, max_n))
    letters = draw(st.lists(
        st.integers(1, n - 1).flatmap(lambda i: st.sampled_from((i, -i))), max_size=max_len))
    return BraidWord(n, letters)


@st.composite
def pure_braids(draw, n=None, min_n=3, max_n=5, max_len=16):
    return pure_part(draw(braid_words(n=n, min_n=min_n, max_n=max_n, max_len=max_len)))[0]


def random_word(rng, n, length):
    return BraidWord(n, [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)])


def random_pure(rng, n, length):
    return pure_part(random_word(rng, n, length))[0]


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
