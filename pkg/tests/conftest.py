import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from latmeas import catalog

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# random lattices come from a seed so that shrinking stays meaningful
seeds = st.integers(min_value=0, max_value=2**32 - 1)
lattices = seeds.map(lambda s: catalog.random_lattice(random.Random(s), max_size=10))
small_lattices = seeds.map(lambda s: catalog.random_lattice(random.Random(s), max_size=7))


@pytest.fixture(scope="session")
def up_to_6():
    return catalog.enumerate_up_to(6)


@pytest.fixture
def m3():
    return catalog.named("m3").lattice


@pytest.fixture
def m2():
    return catalog.named("m2").lattice


@pytest.fixture
def n5():
    return catalog.named("n5").lattice


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
