"""Derived-equivalence invariants of Brauer complexes"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Tuple

import networkx as nx

from brauer_cli.algebra import center_formula
from brauer_cli.quiver import derive_quiver
from brauer_cli.ribbon_core import BrauerComplex, ensure_valid_brauer

COMPARED_FIELDS = ("n", "perimeters", "mults", "genus", "bipartite", "center_dim")


@dataclass(frozen=True)
class InvariantSignature:
    """Invariants preserved by every tilting transformation"""
    n: int
    perimeters: Tuple[int, ...]
    mults: Tuple[int, ...]
    genus: int
    bipartite: bool
    center_dim: int
    # carried for traceability, not compared
    euler_defect: int = field(default=0, compare=False)
    vertices: int = field(default=0, compare=False)
    faces: int = field(default=0, compare=False)

    def key(self) -> Tuple:
        return tuple(getattr(self, name) for name in COMPARED_FIELDS)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["perimeters"] = list(self.perimeters)
        data["mults"] = list(self.mults)
        return data


def is_bipartite(b: BrauerComplex) -> bool:
    """Bipartiteness of the 1-skeleton; a loop rules it out"""
    graph = b.complex.one_skeleton()
    if any(u == v for u, v in graph.edges()):
        return False
    return nx.is_bipartite(nx.Graph(graph))


def signature(b: BrauerComplex) -> InvariantSignature:
    ensure_valid_brauer(b)
    c = b.complex
    faces = c.faces()
    return InvariantSignature(
        n=c.edge_count,
        perimeters=tuple(sorted(f.perimeter for f in faces)),
        mults=tuple(sorted(b.mult.values())),
        genus=c.genus(),
        bipartite=is_bipartite(b),
        center_dim=center_formula(derive_quiver(b)).dim_Z,
        euler_defect=c.euler_defect(),
        vertices=len(c.vertices()),
        faces=len(faces),
    )


def compare(s1: InvariantSignature, s2: InvariantSignature) -> List[str]:
    """Fields on which the signatures differ; empty means indistinguishable"""
    return [name for name in COMPARED_FIELDS if getattr(s1, name) != getattr(s2, name)]


def sphere_bipartite_check(b: BrauerComplex) -> bool:
    """For genus 0: bipartite exactly when every face perimeter is even"""
    sig = signature(b)
    if sig.genus != 0:
        return True
    return sig.bipartite == all(p % 2 == 0 for p in sig.perimeters)
