"""Document formats for complexes: dart-level, vertex-rotation and quiver presentations"""
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from brauer_cli.errors import ParseError
from brauer_cli.quiver import ExtendedQuiver, quiver_to_complex
from brauer_cli.ribbon_core import (
    BrauerComplex,
    RibbonComplex,
    ensure_valid,
    ensure_valid_brauer,
    from_cycles,
    from_rotations,
)


class DocumentKind(Enum):
    """Input document kinds, told apart by their top-level keys"""
    COMPLEX = "complex"
    GRAPH = "graph"
    QUIVER = "quiver"


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected an integer, got {value!r}", code="bad-document")
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{where}: expected an integer, got {value!r}", code="bad-document")


def _as_list(value: Any, where: str) -> List[Any]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list", code="bad-document")
    return value


@dataclass
class ComplexDocument:
    """Dart-level document: alpha as pairs, sigma as cycles, mult per vertex dart"""
    darts: int
    alpha: List[List[int]]
    sigma: List[List[int]]
    mult: Dict[int, int] = field(default_factory=dict)
    edge_labels: Dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ComplexDocument":
        darts = _as_int(data.get("darts"), "darts")
        alpha = [[_as_int(d, "alpha") for d in _as_list(pair, "alpha")]
                 for pair in _as_list(data.get("alpha"), "alpha")]
        sigma = [[_as_int(d, "sigma") for d in _as_list(cycle, "sigma")]
                 for cycle in _as_list(data.get("sigma", []), "sigma")]
        if any(len(pair) != 2 for pair in alpha):
            raise ParseError("alpha: every entry must pair two darts", code="bad-document")
        if any(not 0 <= d < darts for group in alpha + sigma for d in group):
            raise ParseError(f"dart out of range 0..{darts - 1}", code="bad-document")
        raw_mult = data.get("mult", {})
        raw_labels = data.get("edge_labels", {})
        if not isinstance(raw_mult, dict) or not isinstance(raw_labels, dict):
            raise ParseError("mult and edge_labels must be objects", code="bad-document")
        mult = {_as_int(k, "mult"): _as_int(v, "mult") for k, v in raw_mult.items()}
        labels = {_as_int(k, "edge_labels"): str(v) for k, v in raw_labels.items()}
        return cls(darts, alpha, sigma, mult, labels)

    def to_complex(self) -> BrauerComplex:
        base = from_cycles(self.darts, self.alpha, self.sigma)
        labels = tuple(sorted((min(d, base.alpha[d]), label) for d, label in self.edge_labels.items()))
        c = ensure_valid(RibbonComplex(base.alpha, base.sigma, labels))
        return ensure_valid_brauer(BrauerComplex.from_vertex_mults(c, self.mult))

    @classmethod
    def from_complex(cls, b: BrauerComplex) -> "ComplexDocument":
        c = b.complex
        return cls(
            darts=c.dart_count,
            alpha=[[e, c.alpha[e]] for e in c.edges()],
            sigma=[list(cycle) for cycle in c.rotations()],
            mult=dict(b.mult),
            edge_labels=dict(c.labels),
        )

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "darts": self.darts,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "mult": {str(k): v for k, v in sorted(self.mult.items())},
        }
        if self.edge_labels:
            data["edge_labels"] = {str(k): v for k, v in sorted(self.edge_labels.items())}
        return data


@dataclass
class GraphDocument:
    """Vertex-level document: counter-clockwise edge references per vertex"""
    vertices: List[Dict[str, Any]]
    edges: Optional[List[Any]] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GraphDocument":
        vertices = _as_list(data.get("vertices"), "vertices")
        for v in vertices:
            if not isinstance(v, dict) or "rotation" not in v:
                raise ParseError("every vertex needs a rotation list", code="bad-document")
            _as_list(v["rotation"], "rotation")
        edges = data.get("edges")
        return cls(vertices, _as_list(edges, "edges") if edges is not None else None)

    def to_complex(self) -> BrauerComplex:
        rotations = [[str(e) for e in v["rotation"]] for v in self.vertices]
        mults = [_as_int(v.get("mult", 1), "mult") for v in self.vertices]
        order = [str(e) for e in self.edges] if self.edges is not None else None
        return ensure_valid_brauer(from_rotations(rotations, mults, order, labelled=True))


@dataclass
class QuiverDocument:
    """Quiver presentation: named arrows with their A- and G-cycle partitions"""
    arrows: Dict[str, Tuple[str, str]]
    a_cycles: List[List[str]]
    g_cycles: List[List[str]]
    a_mults: Optional[List[int]] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuiverDocument":
        raw = data.get("arrows")
        if not isinstance(raw, dict):
            raise ParseError("arrows must map names to [source, target]", code="bad-document")
        arrows = {}
        for name, ends in raw.items():
            ends = _as_list(ends, f"arrow {name}")
            if len(ends) != 2:
                raise ParseError(f"arrow {name} needs a source and a target", code="bad-document")
            arrows[str(name)] = (str(ends[0]), str(ends[1]))
        a_cycles = [[str(x) for x in _as_list(c, "a_cycles")] for c in _as_list(data.get("a_cycles"), "a_cycles")]
        g_cycles = [[str(x) for x in _as_list(c, "g_cycles")] for c in _as_list(data.get("g_cycles"), "g_cycles")]
        known = set(arrows)
        if any(x not in known for cycle in a_cycles + g_cycles for x in cycle):
            raise ParseError("cycle mentions an unknown arrow", code="bad-document")
        mults = data.get("a_mults")
        if mults is not None:
            mults = [_as_int(m, "a_mults") for m in _as_list(mults, "a_mults")]
            if len(mults) != len(a_cycles):
                raise ParseError("one multiplicity per A-cycle required", code="bad-document")
        return cls(arrows, a_cycles, g_cycles, mults)

    def to_quiver(self) -> ExtendedQuiver:
        return ExtendedQuiver.from_presentation(self.arrows, self.a_cycles, self.g_cycles, self.a_mults)

    def to_complex(self) -> BrauerComplex:
        return quiver_to_complex(self.to_quiver())


class DocumentParser:
    """Turn JSON documents of any supported kind into Brauer complexes"""

    @staticmethod
    def detect_kind(data: Any) -> DocumentKind:
        if not isinstance(data, dict):
            raise ParseError("document must be a JSON object", code="bad-document")
        if "darts" in data:
            return DocumentKind.COMPLEX
        if "vertices" in data:
            return DocumentKind.GRAPH
        if "arrows" in data:
            return DocumentKind.QUIVER
        raise ParseError("document has none of 'darts', 'vertices' or 'arrows'", code="bad-document")

    @classmethod
    def parse_data(cls, data: Any) -> BrauerComplex:
        kind = cls.detect_kind(data)
        if kind is DocumentKind.COMPLEX:
            return ComplexDocument.from_dict(data).to_complex()
        if kind is DocumentKind.GRAPH:
            return GraphDocument.from_dict(data).to_complex()
        return QuiverDocument.from_dict(data).to_complex()

    @classmethod
    def parse(cls, text: str) -> BrauerComplex:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}", code="bad-json")
        return cls.parse_data(data)


def dumps(data: Any, indent: Optional[int] = 2) -> str:
    """Stable JSON text: sorted keys, fixed separators"""
    return json.dumps(data, indent=indent, sort_keys=True, separators=(",", ": ") if indent else (",", ":"))


def serialize(b: BrauerComplex, indent: Optional[int] = 2) -> str:
    return dumps(ComplexDocument.from_complex(b).to_dict(), indent)
