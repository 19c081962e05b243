"""Pytest configuration and fixtures."""

import pytest

import common
from linalg.field import Field
from semtl import corpus


@pytest.fixture(autouse=True)
def fresh_settings():
    """Each test sees settings read from defaults, not a previous override."""
    common._settings = None
    yield
    common._settings = None


@pytest.fixture
def f101():
    """The default ground field."""
    return Field(101)


@pytest.fixture
def rationals():
    return Field(0)


@pytest.fixture
def sigma(f101):
    """Dual numbers k[γ]/(γ²) on vertex 3."""
    return corpus.dual_numbers(f101)


@pytest.fixture
def lambda_(f101):
    """Λ: loop α at 1 and β: 1 -> 2 modulo α² and βα."""
    return corpus.example7_lambda(f101)


@pytest.fixture
def example7(f101):
    """The level-1 equivalence between Λ and Σ."""
    return corpus.example7(f101, level=1)
