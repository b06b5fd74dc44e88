import pytest
from hypothesis import HealthCheck, settings

from horncat.quantale import boolean_chain, capped_chain, pos_theory, preord_theory

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def preord():
    return preord_theory()


@pytest.fixture
def pos():
    return pos_theory()


@pytest.fixture
def two():
    return boolean_chain()


@pytest.fixture
def three():
    return capped_chain(2)
