"""
Shipped example complexes
"""
import json
from pathlib import Path
from typing import Dict, List, Optional

from brauer_cli.config import Config
from brauer_cli.errors import FileOperationError
from brauer_cli.parser import DocumentParser
from brauer_cli.ribbon_core import BrauerComplex


class FixtureCatalog:
    """Lists and loads the fixture documents"""

    @staticmethod
    def directory(config: Optional[Config] = None) -> Path:
        return (config or Config()).FIXTURES_DIR

    @staticmethod
    def list_fixtures(config: Optional[Config] = None) -> List[str]:
        """Return the names of the available fixtures"""
        folder = FixtureCatalog.directory(config)
        if not folder.is_dir():
            return []
        return sorted(p.stem for p in folder.glob("*.json"))

    @staticmethod
    def path(name: str, config: Optional[Config] = None) -> Path:
        path = FixtureCatalog.directory(config) / f"{name}.json"
        if not path.is_file():
            raise FileOperationError(str(path), details=[
                f"known fixtures: {', '.join(FixtureCatalog.list_fixtures(config)) or 'none'}"])
        return path

    @staticmethod
    def describe(config: Optional[Config] = None) -> Dict[str, str]:
        """Fixture name to its one-line description"""
        return {
            name: json.loads(FixtureCatalog.path(name, config).read_text(encoding="utf-8")).get("description", "")
            for name in FixtureCatalog.list_fixtures(config)
        }

    @staticmethod
    def load(name: str, config: Optional[Config] = None) -> BrauerComplex:
        return DocumentParser.parse(FixtureCatalog.path(name, config).read_text(encoding="utf-8"))
