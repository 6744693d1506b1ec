import pytest

from gtame import fixtures
from gtame.config import SampleConfig
from gtame.core import get_algebra
from gtame.linalg import DEFAULT_PRIME

GTAME_ENV = [
    "GTAME_PRIME",
    "GTAME_SEED",
    "GTAME_SAMPLES",
    "GTAME_ROUNDS",
    "GTAME_CROSS_PRIMES",
    "GTAME_TMAX",
    "GTAME_LOG_LEVEL",
]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Run every test without GTAME_* overrides from the caller's shell or .env."""
    for name in GTAME_ENV:
        monkeypatch.delenv(name, raising=False)
    yield


def _algebra(name: str):
    return get_algebra(fixtures.load(name), DEFAULT_PRIME)


@pytest.fixture(scope="session")
def a1():
    return _algebra("A1")


@pytest.fixture(scope="session")
def a2():
    return _algebra("A2")


@pytest.fixture(scope="session")
def a3():
    return _algebra("A3")


@pytest.fixture(scope="session")
def a3_rel():
    return _algebra("A3-rel")


@pytest.fixture(scope="session")
def k2():
    return _algebra("K2")


@pytest.fixture(scope="session")
def k3():
    return _algebra("K3")


@pytest.fixture(scope="session")
def k5():
    return _algebra("K5")


@pytest.fixture(scope="session")
def kronecker():
    """K_m for m = 2..5, keyed by m."""
    return {m: _algebra(f"K{m}") for m in (2, 3, 4, 5)}


@pytest.fixture(scope="session")
def cfg():
    """Small single-prime sampling configuration."""
    return SampleConfig(prime=DEFAULT_PRIME, seed=7, samples=5, rounds=8, cross_primes=1)


@pytest.fixture(scope="session")
def cfg_cross():
    """Default-size sampling confirmed on two primes."""
    return SampleConfig(prime=DEFAULT_PRIME, seed=7, samples=7, rounds=12, cross_primes=2)
