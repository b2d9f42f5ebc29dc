import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from pathcat.corpus import random_functor, random_groupoid  # noqa: E402

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def groupoids(max_objects=3, max_hom=4):
    return seeds.map(lambda s: random_groupoid(random.Random(s), max_objects, max_hom))


def maps(max_objects=3, max_hom=4):
    """Random functors between random groupoids (always exists: target has objects)."""

    def build(s):
        rng = random.Random(s)
        a = random_groupoid(rng, max_objects, max_hom)
        b = random_groupoid(rng, max_objects, max_hom)
        return random_functor(rng, a, b)

    return seeds.map(build)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
