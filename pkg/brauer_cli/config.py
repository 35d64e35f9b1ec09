"""Configuration and constants for the Brauer complex toolkit"""
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import ClassVar, List

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_bool(name: str, default: bool) -> bool:
    return os.getenv(name, 'true' if default else 'false').lower() == 'true'


@dataclass
class Config:
    """Configuration read from the environment at construction time"""
    # Bounded searches in the genus-0 witness construction
    SEARCH_DEPTH: int = field(default_factory=lambda: _env_int('BRAUER_SEARCH_DEPTH', 12))
    SEARCH_BUDGET: int = field(default_factory=lambda: _env_int('BRAUER_SEARCH_BUDGET', 200000))
    MANEUVER_BUDGET: int = field(default_factory=lambda: _env_int('BRAUER_MANEUVER_BUDGET', 20000))

    # Orbit exploration
    ORBIT_BUDGET: int = field(default_factory=lambda: _env_int('BRAUER_ORBIT_BUDGET', 5000))
    CENSUS_MAX_EDGES: int = field(default_factory=lambda: _env_int('BRAUER_CENSUS_MAX_EDGES', 6))

    # Size limits of the exhaustive End(T) comparison
    ENDO_MAX_EDGES: int = field(default_factory=lambda: _env_int('BRAUER_ENDO_MAX_EDGES', 6))
    ENDO_MAX_MULT: int = field(default_factory=lambda: _env_int('BRAUER_ENDO_MAX_MULT', 2))

    FIXTURES_DIR: Path = field(default_factory=lambda: Path(os.getenv(
        'BRAUER_FIXTURES_DIR', str(Path(__file__).resolve().parent.parent / 'fixtures'))))

    # Output settings
    JSON_INDENT: int = field(default_factory=lambda: _env_int('BRAUER_JSON_INDENT', 2))
    PRETTY: bool = field(default_factory=lambda: _env_bool('BRAUER_PRETTY', True))
    SPINNER_STYLE: str = field(default_factory=lambda: os.getenv('SPINNER_STYLE', 'dots'))

    @classmethod
    def from_env(cls) -> "Config":
        """Re-read every setting from the current environment"""
        return cls()

    # Loading messages for long computations
    WORKING_MESSAGES: ClassVar[List[str]] = [
        "🧮 Multiplying paths...",
        "🔁 Rotating darts...",
        "🧭 Walking faces...",
        "🌳 Growing maps...",
        "🔍 Searching moves...",
        "📐 Reducing matrices...",
    ]

    @staticmethod
    def get_random_working_message() -> str:
        """Get a random message for loading animations"""
        return random.choice(Config.WORKING_MESSAGES)
