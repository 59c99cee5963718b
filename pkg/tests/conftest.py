import pytest
from hypothesis import HealthCheck, settings

from hopfkit.engine import AlgebraHandle
from hopfkit.presets import preset

settings.register_profile(
    "hopfkit", derandomize=True, deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hopfkit")

_HANDLES = {}


def get_handle(name, max_degree=10):
    key = (name, max_degree)
    if key not in _HANDLES:
        _HANDLES[key] = AlgebraHandle(preset(name), max_degree)
    return _HANDLES[key]


@pytest.fixture
def handle():
    return get_handle
