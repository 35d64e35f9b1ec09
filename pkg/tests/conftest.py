import random

import pytest

from brauer_cli.config import Config
from brauer_cli.fixtures import FixtureCatalog
from brauer_cli.ribbon_core import BrauerComplex, from_rotations


@pytest.fixture
def config():
    return Config()


@pytest.fixture
def load():
    """Load a shipped fixture by name"""
    return FixtureCatalog.load


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def path3() -> BrauerComplex:
    """Path with two edges; vertex 0 is an end"""
    return from_rotations([["a"], ["a", "b"], ["b"]])


@pytest.fixture
def rose2() -> BrauerComplex:
    """Two loops side by side at one vertex"""
    return from_rotations([["a", "a", "b", "b"]])
