import functools

import pytest
from hypothesis import HealthCheck, settings

from circlepack.configs import validate_config
from circlepack.enumeration import enumerate_curvatures

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def presence(kind, seed, N, threads=1):
    """Shared enumeration results; several tests reuse the same large runs."""
    return enumerate_curvatures(validate_config(kind, seed), N, threads=threads)


@pytest.fixture(scope="session")
def cached_presence():
    return presence
