"""
Brauer toolkit - File Handler Module
Reads complex documents and writes complexes, census tables and DOT drawings
"""
import csv
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List

import networkx as nx
from graphviz import Graph

from brauer_cli.config import Config
from brauer_cli.errors import FileOperationError, Validator
from brauer_cli.parser import DocumentParser, serialize
from brauer_cli.ribbon_core import BrauerComplex

logger = logging.getLogger(__name__)


class FileHandler:
    """Handles document reading and result writing"""

    def __init__(self, config: Config):
        """Initialize file handler"""
        self.config = config

    def read_text(self, file_path: str) -> str:
        check = Validator.validate_file_path(file_path)
        if not check["valid"]:
            raise FileOperationError(file_path, details=[check["error"]] + [
                f"did you mean {name}?" for name in check["suggestions"]])
        try:
            return check["path"].read_text(encoding="utf-8")
        except OSError as e:
            raise FileOperationError(file_path, details=[str(e)])

    def read_complex(self, file_path: str) -> BrauerComplex:
        """Parse any supported document kind from a file"""
        b = DocumentParser.parse(self.read_text(file_path))
        logger.debug("read %s: %d darts", file_path, b.dart_count)
        return b

    def write_text(self, file_path: str, text: str) -> Path:
        path = Path(file_path).expanduser()
        try:
            path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        except OSError as e:
            raise FileOperationError(file_path, details=[str(e)], operation="write")
        return path

    def write_complex(self, file_path: str, b: BrauerComplex) -> Path:
        return self.write_text(file_path, serialize(b, self.config.JSON_INDENT))

    def write_csv(self, file_path: str, rows: Iterable[Dict[str, Any]], fieldnames: List[str]) -> Path:
        path = Path(file_path).expanduser()
        try:
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.DictWriter(f, fieldnames=fieldnames)
                writer.writeheader()
                writer.writerows(rows)
        except OSError as e:
            raise FileOperationError(file_path, details=[str(e)], operation="write")
        return path


def to_dot(b: BrauerComplex, name: str = "brauer") -> str:
    """1-skeleton in DOT, vertices in breadth-first order with their multiplicities"""
    c = b.complex
    graph = c.one_skeleton()
    start = c.vertices()[0]
    order = [start] + [v for _, v in nx.bfs_edges(nx.Graph(graph), start)]
    dot = Graph(name)
    for v in order:
        dot.node(f"v{v}", label=f"v{v} (f={b.mult_of(v)})")
    for u, v, edge in sorted(graph.edges(keys=True), key=lambda t: t[2]):
        dot.edge(f"v{u}", f"v{v}", label=c.label_of(edge))
    return dot.source
