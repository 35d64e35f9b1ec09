"""
Orbits of the tilting moves, explored breadth first up to isomorphism.

``explore`` follows every move out of every reached complex and records the
reachability relation as a directed graph. ``census`` enumerates every
connected complex of a given size, groups the isomorphism classes by their
invariant signature and counts the orbits inside each group.
"""
import itertools
import logging
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional

import networkx as nx

from brauer_cli.config import Config
from brauer_cli.errors import EdgeError, SizeLimitError
from brauer_cli.invariants import InvariantSignature, signature
from brauer_cli.ribbon_core import BrauerComplex, RibbonComplex, canonical_form, random_complex
from brauer_cli.tilting import apply_move

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int], None]


def _digest(b: BrauerComplex) -> str:
    return canonical_form(b).digest


@dataclass
class OrbitReport:
    """Everything reached from one seed"""
    seed: str
    signature: InvariantSignature
    members: Dict[str, BrauerComplex]
    graph: nx.DiGraph
    move_counts: Counter = field(default_factory=Counter)
    fixed_moves: int = 0
    frontier_exhausted: bool = True
    budget_exhausted: bool = False

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def symmetric(self) -> bool:
        """Every reached complex leads back to the seed"""
        return self.frontier_exhausted and nx.is_strongly_connected(self.graph)

    def contains(self, b: BrauerComplex) -> bool:
        return _digest(b) in self.members

    def signatures_agree(self) -> bool:
        return all(signature(m) == self.signature for m in self.members.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "size": self.size,
            "members": sorted(self.members),
            "signature": self.signature.to_dict(),
            "move_counts": dict(sorted(self.move_counts.items())),
            "fixed_moves": self.fixed_moves,
            "symmetric": self.symmetric,
            "frontier_exhausted": self.frontier_exhausted,
            "budget_exhausted": self.budget_exhausted,
        }


def explore(b: BrauerComplex, max_size: Optional[int] = None, config: Optional[Config] = None) -> OrbitReport:
    """Breadth-first closure of b under tilting moves, deduplicated by canonical form.

    Running out of budget is not an error: the partial report is flagged.
    """
    config = config or Config()
    if b.edge_count < 2:
        raise EdgeError("orbits need at least two edges", code="single-edge-complex")
    budget = max_size or config.ORBIT_BUDGET

    seed = _digest(b)
    members = {seed: b}
    graph = nx.DiGraph()
    graph.add_node(seed)
    counts: Counter = Counter()
    fixed = 0
    truncated = False
    queue = deque([seed])
    while queue:
        key = queue.popleft()
        current = members[key]
        for a in current.edges():
            nxt, move = apply_move(current, a)
            counts[move.type.name.lower()] += 1
            digest = _digest(nxt)
            if digest == key:
                fixed += 1
            if digest not in members:
                if len(members) >= budget:
                    truncated = True
                    continue
                members[digest] = nxt
                queue.append(digest)
            graph.add_edge(key, digest)

    logger.info("orbit of %s: %d complexes%s", seed[:12], len(members), " (truncated)" if truncated else "")
    return OrbitReport(seed, signature(b), members, graph, counts, fixed,
                       frontier_exhausted=not truncated, budget_exhausted=truncated)


# ---------------------------------------------------------------- enumeration

def _with_unit_mults(c: RibbonComplex) -> BrauerComplex:
    return BrauerComplex(c)


def _grow(c: RibbonComplex) -> Iterator[RibbonComplex]:
    """Every map with one more edge: a leaf at a corner or a chord between two corners"""
    n = c.dart_count
    alpha = list(c.alpha) + [n + 1, n]
    for d in range(n):
        sigma = list(c.sigma) + [n, n + 1]
        sigma[n], sigma[d] = sigma[d], n
        yield RibbonComplex(tuple(alpha), tuple(sigma))
    for d1 in range(n):
        for d2 in range(d1, n):
            sigma = list(c.sigma) + [n, n + 1]
            sigma[n], sigma[d1] = sigma[d1], n
            sigma[n + 1], sigma[d2] = sigma[d2], n + 1
            yield RibbonComplex(tuple(alpha), tuple(sigma))


def enumerate_maps(max_edges: int) -> Dict[int, List[RibbonComplex]]:
    """Connected maps up to isomorphism, keyed by edge count, in digest order"""
    segment = RibbonComplex((1, 0), (0, 1))
    loop = RibbonComplex((1, 0), (1, 0))
    levels = {1: [segment, loop]}
    for edges in range(2, max_edges + 1):
        found: Dict[str, RibbonComplex] = {}
        for parent in levels[edges - 1]:
            for child in _grow(parent):
                digest = _digest(_with_unit_mults(child))
                found.setdefault(digest, child)
        levels[edges] = [found[k] for k in sorted(found)]
        logger.debug("%d maps with %d edges", len(found), edges)
    return {k: v for k, v in levels.items() if k <= max_edges}


def with_multiplicities(c: RibbonComplex, max_mult: int) -> List[BrauerComplex]:
    """Every multiplicity assignment 1..max_mult on the vertices of c, up to isomorphism"""
    vertices = c.vertices()
    found: Dict[str, BrauerComplex] = {}
    for values in itertools.product(range(1, max_mult + 1), repeat=len(vertices)):
        b = BrauerComplex.from_vertex_mults(c, dict(zip(vertices, values)))
        found.setdefault(_digest(b), b)
    return [found[k] for k in sorted(found)]


def enumerate_complexes(max_edges: int, max_mult: int = 1, genus: Optional[int] = None,
                        min_edges: int = 1) -> List[BrauerComplex]:
    complexes = []
    for edges, maps in enumerate_maps(max_edges).items():
        if edges < min_edges:
            continue
        for c in maps:
            if genus is None or c.genus() == genus:
                complexes.extend(with_multiplicities(c, max_mult))
    return complexes


# ---------------------------------------------------------------- census

@dataclass
class CensusRow:
    """One signature group of a census"""
    signature: InvariantSignature
    classes: int
    orbits: int
    symmetric: bool

    @property
    def separated(self) -> bool:
        """The signature pins down a single orbit"""
        return self.orbits == 1

    def to_row(self) -> Dict[str, Any]:
        s = self.signature
        return {
            "n": s.n,
            "perimeters": " ".join(map(str, s.perimeters)),
            "mults": " ".join(map(str, s.mults)),
            "genus": s.genus,
            "bipartite": int(s.bipartite),
            "center_dim": s.center_dim,
            "classes": self.classes,
            "orbits": self.orbits,
            "separated": int(self.separated),
            "symmetric": int(self.symmetric),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {"signature": self.signature.to_dict(), "classes": self.classes,
                "orbits": self.orbits, "separated": self.separated, "symmetric": self.symmetric}


CENSUS_FIELDS = ["n", "perimeters", "mults", "genus", "bipartite", "center_dim",
                 "classes", "orbits", "separated", "symmetric"]


def _group_orbits(group: List[BrauerComplex]) -> CensusRow:
    graph = nx.DiGraph()
    for b in group:
        key = _digest(b)
        graph.add_node(key)
        if b.edge_count < 2:
            continue
        for a in b.edges():
            nxt, _ = apply_move(b, a)
            graph.add_edge(key, _digest(nxt))
    orbits = nx.number_weakly_connected_components(graph)
    symmetric = nx.number_strongly_connected_components(graph) == orbits
    return CensusRow(signature(group[0]), len(group), orbits, symmetric)


def census(edge_budget: int, mult_budget: int = 1, genus: Optional[int] = None,
           config: Optional[Config] = None,
           progress: Optional[ProgressCallback] = None) -> List[CensusRow]:
    """Isomorphism classes and orbits per invariant signature"""
    config = config or Config()
    if edge_budget > config.CENSUS_MAX_EDGES:
        raise SizeLimitError(f"census limited to {config.CENSUS_MAX_EDGES} edges")

    groups: Dict[tuple, List[BrauerComplex]] = {}
    for b in enumerate_complexes(edge_budget, mult_budget, genus):
        groups.setdefault(signature(b).key(), []).append(b)

    rows = []
    for done, key in enumerate(sorted(groups, key=repr), 1):
        rows.append(_group_orbits(groups[key]))
        if progress is not None:
            progress(done, len(groups))
    logger.info("census: %d groups, %d classes", len(rows), sum(r.classes for r in rows))
    return rows


def random_census(rng: random.Random, samples: int, edges: int, max_mult: int = 1,
                  config: Optional[Config] = None) -> List[Dict[str, Any]]:
    """Explore the orbits of random complexes and check signature constancy"""
    config = config or Config()
    results = []
    for _ in range(samples):
        report = explore(random_complex(rng, edges, max_mult), config=config)
        results.append({
            "seed": report.seed,
            "size": report.size,
            "frontier_exhausted": report.frontier_exhausted,
            "signatures_agree": report.signatures_agree(),
        })
    return results
