"""
Pytest Configuration and Fixtures

Provides the named finite instances, fixture file paths and small-budget
settings shared by the test modules.
"""

import random
from pathlib import Path

import pytest


FIXTURES_DIR = Path(__file__).resolve().parents[2] / "fixtures"


# =============================================================================
# FILE FIXTURES
# =============================================================================

@pytest.fixture
def fixtures_dir() -> Path:
    """Directory of the instance files shipped with the repository"""
    return FIXTURES_DIR


@pytest.fixture
def fixture_file(fixtures_dir):
    """Resolve a fixture file name to its path"""
    def resolve(name: str) -> str:
        path = fixtures_dir / name
        assert path.exists(), f"missing fixture {name}"
        return str(path)

    return resolve


# =============================================================================
# FINITE INSTANCES
# =============================================================================

@pytest.fixture
def z2():
    from cwfcheck.finsemicat import z2

    return z2()


@pytest.fixture
def trivial():
    from cwfcheck.finsemicat import trivial

    return trivial()


@pytest.fixture
def codiscrete2():
    from cwfcheck.finsemicat import codiscrete

    return codiscrete(2)


@pytest.fixture
def constant_composition():
    from cwfcheck.finsemicat import constant_composition

    return constant_composition()


@pytest.fixture
def simplex2():
    """Δ² truncated at level 2"""
    from cwfcheck.simplexcat import standard_simplex

    return standard_simplex(2, 2)


# =============================================================================
# SETTINGS AND RANDOMNESS
# =============================================================================

@pytest.fixture
def settings():
    """Defaults with no .env influence"""
    from cwfcheck.config import Settings

    return Settings()


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(autouse=True)
def _clear_settings_cache():
    from cwfcheck.config import get_settings

    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
