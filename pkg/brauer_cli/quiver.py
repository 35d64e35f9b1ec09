"""
Extended quiver of a Brauer complex.

Arrows are darts: the arrow of dart d runs from edge(d) to edge(sigma(d)).
Vertex rotations give the A-cycles, and the arrow following x on its G-cycle
is alpha(sigma(x)), so arrow d lies on the face containing sigma(d).
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from brauer_cli.errors import EdgeError, InconsistentPartitionError
from brauer_cli.ribbon_core import (
    BrauerComplex,
    RibbonComplex,
    cycles_of,
    ensure_valid,
    ensure_valid_brauer,
)


class LoopKind(Enum):
    """How an edge carries a loop arrow"""
    LEAF = "leaf-loop"
    FACE_BOUNDING = "face-bounding-loop"
    NONE = "none"


@dataclass(frozen=True)
class Arrow:
    """One arrow of the extended quiver"""
    index: int
    name: str
    source: Hashable
    target: Hashable
    a_cycle: int
    a_pos: int
    g_cycle: int
    g_pos: int
    formal: bool


@dataclass(frozen=True)
class ExtendedQuiver:
    """Arrows partitioned into A-cycles and G-cycles"""
    vertices: Tuple[Hashable, ...]
    arrows: Tuple[Arrow, ...]
    a_cycles: Tuple[Tuple[int, ...], ...]
    g_cycles: Tuple[Tuple[int, ...], ...]
    a_cycle_mult: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def a_next(self, x: int) -> int:
        arrow = self.arrows[x]
        cycle = self.a_cycles[arrow.a_cycle]
        return cycle[(arrow.a_pos + 1) % len(cycle)]

    def a_prev(self, x: int) -> int:
        arrow = self.arrows[x]
        cycle = self.a_cycles[arrow.a_cycle]
        return cycle[(arrow.a_pos - 1) % len(cycle)]

    def g_next(self, x: int) -> int:
        arrow = self.arrows[x]
        cycle = self.g_cycles[arrow.g_cycle]
        return cycle[(arrow.g_pos + 1) % len(cycle)]

    def a_length(self, x: int) -> int:
        return len(self.a_cycles[self.arrows[x].a_cycle])

    def mult_of_arrow(self, x: int) -> int:
        return self.a_cycle_mult[self.arrows[x].a_cycle]

    def euler_defect(self) -> int:
        """k + g - n"""
        return len(self.a_cycles) + len(self.g_cycles) - self.n

    def loops_at(self, vertex: Hashable) -> List[Arrow]:
        return [a for a in self.arrows if a.source == vertex and a.target == vertex]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [str(v) for v in self.vertices],
            "arrows": [
                {"name": a.name, "source": str(a.source), "target": str(a.target),
                 "a_cycle": a.a_cycle, "g_cycle": a.g_cycle, "formal": a.formal}
                for a in self.arrows
            ],
            "a_cycles": [
                {"arrows": [self.arrows[x].name for x in cycle], "mult": m}
                for cycle, m in zip(self.a_cycles, self.a_cycle_mult)
            ],
            "g_cycles": [[self.arrows[x].name for x in cycle] for cycle in self.g_cycles],
        }

    @classmethod
    def from_presentation(cls, arrows: Mapping[str, Tuple[Hashable, Hashable]],
                          a_cycles: Sequence[Sequence[str]],
                          g_cycles: Sequence[Sequence[str]],
                          a_mults: Optional[Sequence[int]] = None) -> "ExtendedQuiver":
        """Assemble a quiver from named arrows and their two cycle partitions"""
        names = list(arrows)
        index = {name: i for i, name in enumerate(names)}
        a_cycles_idx = tuple(tuple(index[x] for x in cycle) for cycle in a_cycles)
        g_cycles_idx = tuple(tuple(index[x] for x in cycle) for cycle in g_cycles)
        for partition in (a_cycles_idx, g_cycles_idx):
            flat = sorted(x for cycle in partition for x in cycle)
            if flat != list(range(len(names))):
                raise InconsistentPartitionError("cycles do not partition the arrow set")
        mults = tuple(a_mults) if a_mults is not None else (1,) * len(a_cycles_idx)

        a_pos = {x: (c, p) for c, cycle in enumerate(a_cycles_idx) for p, x in enumerate(cycle)}
        g_pos = {x: (c, p) for c, cycle in enumerate(g_cycles_idx) for p, x in enumerate(cycle)}
        built = []
        for i, name in enumerate(names):
            source, target = arrows[name]
            ac, ap = a_pos[i]
            gc, gp = g_pos[i]
            formal = len(a_cycles_idx[ac]) == 1 and mults[ac] == 1
            built.append(Arrow(i, name, source, target, ac, ap, gc, gp, formal))
        vertices = tuple(dict.fromkeys(v for name in names for v in arrows[name]))
        return cls(vertices, tuple(built), a_cycles_idx, g_cycles_idx, mults)


def derive_quiver(b: BrauerComplex) -> ExtendedQuiver:
    """Extended quiver of a Brauer complex; arrow i is dart i"""
    ensure_valid_brauer(b)
    c = b.complex
    a_cycles = tuple(c.rotations())
    g_next = [c.alpha[c.sigma[x]] for x in range(c.dart_count)]
    g_cycles = tuple(cycles_of(g_next))
    a_pos = {x: (i, p) for i, cycle in enumerate(a_cycles) for p, x in enumerate(cycle)}
    g_pos = {x: (i, p) for i, cycle in enumerate(g_cycles) for p, x in enumerate(cycle)}
    mults = tuple(b.dart_mult[cycle[0]] for cycle in a_cycles)

    arrows = []
    for d in range(c.dart_count):
        ac, ap = a_pos[d]
        gc, gp = g_pos[d]
        formal = c.sigma[d] == d and b.dart_mult[d] == 1
        arrows.append(Arrow(d, str(d), c.edge_of(d), c.edge_of(c.sigma[d]), ac, ap, gc, gp, formal))
    return ExtendedQuiver(tuple(c.edges()), tuple(arrows), a_cycles, g_cycles, mults)


def loop_classification(q: ExtendedQuiver, edge: Hashable) -> LoopKind:
    """Leaf-loop if a loop arrow at edge is a whole A-cycle, face-bounding if a whole G-cycle"""
    if edge not in q.vertices:
        raise EdgeError(f"unknown edge {edge}", code="unknown-edge")
    loops = q.loops_at(edge)
    if any(q.a_length(a.index) == 1 for a in loops):
        return LoopKind.LEAF
    if any(len(q.g_cycles[a.g_cycle]) == 1 for a in loops):
        return LoopKind.FACE_BOUNDING
    return LoopKind.NONE


def quiver_to_complex(q: ExtendedQuiver) -> BrauerComplex:
    """Rebuild the complex: sigma is the A-successor, alpha(d) = g_next(a_prev(d))"""
    m = len(q.arrows)
    sigma = tuple(q.a_next(x) for x in range(m))
    alpha = tuple(q.g_next(q.a_prev(x)) for x in range(m))

    problems = []
    if any(alpha[x] == x or alpha[alpha[x]] != x for x in range(m)):
        problems.append("edge pairing is not a fixed-point-free involution")
    elif any(q.arrows[alpha[x]].source != q.arrows[x].source for x in range(m)):
        problems.append("paired arrows leave different vertices")
    if any(q.arrows[x].target != q.arrows[sigma[x]].source for x in range(m)):
        problems.append("A-cycles are not composable paths")
    counts: Dict[Hashable, int] = {}
    for arrow in q.arrows:
        counts[arrow.source] = counts.get(arrow.source, 0) + 1
    if any(counts.get(v, 0) != 2 for v in q.vertices):
        problems.append("a vertex does not start exactly two arrows")
    if problems:
        raise InconsistentPartitionError("quiver is not realizable by an oriented complex",
                                         details=problems)

    c = RibbonComplex(alpha, sigma)
    labels = tuple(sorted((c.edge_of(x), str(q.arrows[x].source)) for x in range(m) if x < alpha[x]))
    c = ensure_valid(RibbonComplex(alpha, sigma, labels))
    dart_mult = tuple(q.mult_of_arrow(x) for x in range(m))
    return BrauerComplex(c, dart_mult)
