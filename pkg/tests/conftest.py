import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from woundcert.fields import Tower

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

F2 = Tower(2, ())
F3 = Tower(3, ())
F2T = Tower(2, ("t",))
F3T = Tower(3, ("t",))
F2TU = Tower(2, ("t", "u"))
F3TU = Tower(3, ("t", "u"))

TOWERS = [F2T, F3T, F2TU]


@pytest.fixture(params=TOWERS, ids=repr)
def tower(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(12345)


def poly_elements(tower, max_degree=2):
    """Strategy for polynomial-shaped elements (denominator 1)."""
    if tower.depth == 0:
        return st.integers(0, tower.p - 1).map(tower.const)
    sub = poly_elements(tower.sub, max_degree=1)
    coeffs = st.lists(sub, min_size=1, max_size=max_degree + 1)

    def build(cs):
        x = tower.gen(tower.depth - 1)
        acc = tower.zero
        for i, c in enumerate(cs):
            acc = acc + tower.element(((c.value,), tower._pone)) * x**i
        return acc

    return coeffs.map(build)


def elements(tower, max_degree=2):
    """Strategy for general elements, fractions included."""
    if tower.depth == 0:
        return poly_elements(tower)
    num = poly_elements(tower, max_degree)
    den = poly_elements(tower, 1).filter(lambda e: not e.is_zero)
    return st.builds(lambda n, d: n / d, num, den)


def nonzero_elements(tower, max_degree=2):
    return elements(tower, max_degree).filter(lambda e: not e.is_zero)
