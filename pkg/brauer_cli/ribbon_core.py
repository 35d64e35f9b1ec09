"""
Half-edge (dart) representation of Brauer complexes.

A complex on darts 0..2E-1 is given by two permutations: ``alpha`` pairs the
two darts of every edge and ``sigma`` rotates counter-clockwise around every
vertex. Faces are the orbits of ``phi = sigma o alpha``, i.e.
``phi(d) = sigma[alpha[d]]``.
"""
import hashlib
import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from brauer_cli.errors import ValidationError


def cycles_of(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Cycles of a permutation, each starting at its minimal element, sorted"""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        cycles.append(tuple(cycle))
    return cycles


def _is_permutation(perm: Sequence[int], n: int) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


@dataclass(frozen=True)
class Face:
    """A face of the complex: one orbit of phi"""
    darts: Tuple[int, ...]

    @property
    def perimeter(self) -> int:
        return len(self.darts)

    @property
    def id(self) -> int:
        return min(self.darts)


@dataclass(frozen=True)
class RibbonComplex:
    """Oriented ribbon graph stored as an edge involution and a vertex rotation"""
    alpha: Tuple[int, ...]
    sigma: Tuple[int, ...]
    edge_labels: Tuple[Tuple[int, str], ...] = ()

    @property
    def dart_count(self) -> int:
        return len(self.alpha)

    @property
    def edge_count(self) -> int:
        return len(self.alpha) // 2

    @cached_property
    def sigma_inv(self) -> Tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return tuple(inv)

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    @cached_property
    def _vertex_cycles(self) -> List[Tuple[int, ...]]:
        return cycles_of(self.sigma)

    @cached_property
    def _vertex_index(self) -> Tuple[int, ...]:
        owner = [0] * self.dart_count
        for cycle in self._vertex_cycles:
            for d in cycle:
                owner[d] = cycle[0]
        return tuple(owner)

    def vertices(self) -> List[int]:
        """Vertex ids (minimal dart of each sigma-orbit), ascending"""
        return [cycle[0] for cycle in self._vertex_cycles]

    def rotation(self, vertex: int) -> Tuple[int, ...]:
        """Darts around a vertex in counter-clockwise order, starting at the id dart"""
        for cycle in self._vertex_cycles:
            if cycle[0] == vertex:
                return cycle
        raise KeyError(vertex)

    def rotations(self) -> List[Tuple[int, ...]]:
        return list(self._vertex_cycles)

    def vertex_of(self, d: int) -> int:
        return self._vertex_index[d]

    def degree(self, vertex: int) -> int:
        return len(self.rotation(vertex))

    def edges(self) -> List[int]:
        """Edge ids (minimal dart of each alpha-orbit), ascending"""
        return [d for d in range(self.dart_count) if d < self.alpha[d]]

    def edge_of(self, d: int) -> int:
        return min(d, self.alpha[d])

    def edge_darts(self, edge: int) -> Tuple[int, int]:
        return (edge, self.alpha[edge])

    def has_edge(self, edge: int) -> bool:
        return 0 <= edge < self.dart_count and edge < self.alpha[edge]

    @property
    def labels(self) -> Dict[int, str]:
        return dict(self.edge_labels)

    def label_of(self, edge: int) -> str:
        return self.labels.get(edge, str(edge))

    def is_loop(self, edge: int) -> bool:
        return self.vertex_of(edge) == self.vertex_of(self.alpha[edge])

    def is_leaf(self, edge: int) -> bool:
        """An edge with a dangling end (a dart fixed by sigma)"""
        return any(self.sigma[d] == d for d in self.edge_darts(edge))

    @cached_property
    def _faces(self) -> List[Face]:
        phi = [self.sigma[self.alpha[d]] for d in range(self.dart_count)]
        return [Face(cycle) for cycle in cycles_of(phi)]

    def faces(self) -> List[Face]:
        return list(self._faces)

    def euler_defect(self) -> int:
        """V - E + F, the quantity k + g - n of the quiver"""
        return len(self._vertex_cycles) - self.edge_count + len(self._faces)

    def genus(self) -> int:
        return (2 - self.euler_defect()) // 2

    def one_skeleton(self) -> nx.MultiGraph:
        """Underlying graph; keys are edge ids, loops kept"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices())
        for edge in self.edges():
            graph.add_edge(self.vertex_of(edge), self.vertex_of(self.alpha[edge]), key=edge)
        return graph

    def dart_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.dart_count))
        for d in range(self.dart_count):
            graph.add_edge(d, self.alpha[d])
            graph.add_edge(d, self.sigma[d])
        return graph

    def is_connected(self) -> bool:
        return self.dart_count > 0 and nx.is_connected(self.dart_graph())

    def relabel(self, perm: Sequence[int]) -> "RibbonComplex":
        """Rename dart d to perm[d]"""
        n = self.dart_count
        alpha = [0] * n
        sigma = [0] * n
        for d in range(n):
            alpha[perm[d]] = perm[self.alpha[d]]
            sigma[perm[d]] = perm[self.sigma[d]]
        labels = tuple(sorted(
            (min(perm[e], perm[self.alpha[e]]), label) for e, label in self.edge_labels))
        return RibbonComplex(tuple(alpha), tuple(sigma), labels)


def validate(c: RibbonComplex) -> List[str]:
    """Return the list of violated invariants; empty means the complex is valid"""
    n = c.dart_count
    issues = []
    if n == 0:
        return ["empty"]
    if not _is_permutation(c.alpha, n) or not _is_permutation(c.sigma, n):
        return ["not-a-permutation"]
    if n % 2:
        issues.append("odd-dart-count")
    if any(c.alpha[d] == d for d in range(n)):
        issues.append("fixed-point-in-alpha")
    if any(c.alpha[c.alpha[d]] != d for d in range(n)):
        issues.append("not-an-involution")
    if not nx.is_connected(c.dart_graph()):
        issues.append("disconnected")
    for edge, _ in c.edge_labels:
        if not (0 <= edge < n) or c.alpha[edge] < edge:
            issues.append("bad-edge-label")
            break
    return issues


def ensure_valid(c: RibbonComplex) -> RibbonComplex:
    issues = validate(c)
    if issues:
        raise ValidationError(f"invalid complex: {', '.join(issues)}", code=issues[0], details=issues)
    return c


@dataclass(frozen=True)
class BrauerComplex:
    """A ribbon complex with a positive multiplicity on every vertex.

    Multiplicities are stored per dart (constant along each sigma-orbit) so
    they survive re-rotation of the darts by tilting moves.
    """
    complex: RibbonComplex
    dart_mult: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.dart_mult:
            object.__setattr__(self, "dart_mult", (1,) * self.complex.dart_count)

    @classmethod
    def from_vertex_mults(cls, complex: RibbonComplex,
                          mults: Optional[Mapping[int, int]] = None) -> "BrauerComplex":
        """Attach multiplicities given per vertex; any dart of the vertex may be the key"""
        mults = dict(mults or {})
        per_vertex: Dict[int, int] = {}
        for dart, value in mults.items():
            if not 0 <= dart < complex.dart_count:
                raise ValidationError(f"multiplicity key {dart} is not a dart", code="bad-multiplicity")
            vertex = complex.vertex_of(dart)
            if per_vertex.get(vertex, value) != value:
                raise ValidationError(f"conflicting multiplicities at vertex {vertex}",
                                      code="bad-multiplicity")
            per_vertex[vertex] = value
        dart_mult = tuple(per_vertex.get(complex.vertex_of(d), 1) for d in range(complex.dart_count))
        return cls(complex, dart_mult)

    @property
    def alpha(self) -> Tuple[int, ...]:
        return self.complex.alpha

    @property
    def sigma(self) -> Tuple[int, ...]:
        return self.complex.sigma

    @property
    def dart_count(self) -> int:
        return self.complex.dart_count

    @property
    def edge_count(self) -> int:
        return self.complex.edge_count

    def edges(self) -> List[int]:
        return self.complex.edges()

    def vertices(self) -> List[int]:
        return self.complex.vertices()

    def faces(self) -> List[Face]:
        return self.complex.faces()

    def genus(self) -> int:
        return self.complex.genus()

    def mult_of(self, vertex: int) -> int:
        return self.dart_mult[vertex]

    @property
    def mult(self) -> Dict[int, int]:
        """Multiplicity keyed by vertex id"""
        return {v: self.dart_mult[v] for v in self.complex.vertices()}

    def relabel(self, perm: Sequence[int]) -> "BrauerComplex":
        dart_mult = [0] * self.dart_count
        for d in range(self.dart_count):
            dart_mult[perm[d]] = self.dart_mult[d]
        return BrauerComplex(self.complex.relabel(perm), tuple(dart_mult))


def validate_brauer(b: BrauerComplex) -> List[str]:
    issues = validate(b.complex)
    if issues:
        return issues
    if len(b.dart_mult) != b.dart_count or any(m < 1 for m in b.dart_mult):
        return ["bad-multiplicity"]
    c = b.complex
    if any(b.dart_mult[d] != b.dart_mult[c.vertex_of(d)] for d in range(c.dart_count)):
        return ["bad-multiplicity"]
    return []


def ensure_valid_brauer(b: BrauerComplex) -> BrauerComplex:
    issues = validate_brauer(b)
    if issues:
        raise ValidationError(f"invalid complex: {', '.join(issues)}", code=issues[0], details=issues)
    return b


def faces(c: RibbonComplex) -> List[Face]:
    return ensure_valid(c).faces()


def genus(c: RibbonComplex) -> int:
    return ensure_valid(c).genus()


def euler_defect(c: RibbonComplex) -> int:
    return ensure_valid(c).euler_defect()


def from_rotations(rotations: Sequence[Sequence[Hashable]],
                   mults: Optional[Sequence[int]] = None,
                   edge_order: Optional[Sequence[Hashable]] = None,
                   labelled: bool = False) -> BrauerComplex:
    """Build a complex from counter-clockwise lists of edge references per vertex.

    Edge k (in ``edge_order``, default order of first appearance) gets darts
    2k for its first occurrence and 2k+1 for its second.
    """
    if edge_order is None:
        edge_order = list(dict.fromkeys(e for rotation in rotations for e in rotation))
    index = {e: k for k, e in enumerate(edge_order)}
    if len(index) != len(edge_order):
        raise ValidationError("duplicate edge identifiers", code="inconsistent-rotation")

    seen: Dict[Hashable, int] = {}
    cycles: List[List[int]] = []
    for rotation in rotations:
        cycle = []
        for e in rotation:
            if e not in index:
                raise ValidationError(f"unknown edge {e!r} in rotation", code="inconsistent-rotation")
            occurrence = seen.get(e, 0)
            if occurrence >= 2:
                raise ValidationError(f"edge {e!r} has more than two ends", code="inconsistent-rotation")
            seen[e] = occurrence + 1
            cycle.append(2 * index[e] + occurrence)
        if not cycle:
            raise ValidationError("vertex without edges", code="inconsistent-rotation")
        cycles.append(cycle)
    missing = [e for e in edge_order if seen.get(e, 0) != 2]
    if missing:
        raise ValidationError(f"edges without two ends: {missing!r}", code="inconsistent-rotation")

    n = 2 * len(edge_order)
    alpha = tuple(d ^ 1 for d in range(n))
    sigma = [0] * n
    dart_mult = [1] * n
    mults = list(mults) if mults is not None else [1] * len(cycles)
    if len(mults) != len(cycles):
        raise ValidationError("one multiplicity per vertex required", code="bad-multiplicity")
    for cycle, m in zip(cycles, mults):
        for pos, d in enumerate(cycle):
            sigma[d] = cycle[(pos + 1) % len(cycle)]
            dart_mult[d] = m
    labels = tuple((2 * k, str(e)) for k, e in enumerate(edge_order)) if labelled else ()
    return BrauerComplex(RibbonComplex(alpha, tuple(sigma), labels), tuple(dart_mult))


def from_cycles(dart_count: int, alpha_pairs: Sequence[Sequence[int]],
                sigma_cycles: Sequence[Sequence[int]]) -> RibbonComplex:
    """Build from explicit dart pairs and rotation cycles; unchecked"""
    alpha = list(range(dart_count))
    sigma = list(range(dart_count))
    for a, b in alpha_pairs:
        alpha[a], alpha[b] = b, a
    for cycle in sigma_cycles:
        for pos, d in enumerate(cycle):
            sigma[d] = cycle[(pos + 1) % len(cycle)]
    return RibbonComplex(tuple(alpha), tuple(sigma))


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical dart relabeling together with the encoding it produces"""
    relabeling: Tuple[int, ...]
    encoding: bytes

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.encoding).hexdigest()


def _relabelling_from(c: RibbonComplex, root: int) -> List[int]:
    """Breadth-first numbering of darts from root, following alpha then sigma"""
    order = [root]
    new = [-1] * c.dart_count
    new[root] = 0
    queue = deque([root])
    while queue:
        d = queue.popleft()
        for nxt in (c.alpha[d], c.sigma[d]):
            if new[nxt] < 0:
                new[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    return order


def canonical_form(b: BrauerComplex, with_labels: bool = False) -> CanonicalForm:
    """Minimal encoding over all root darts; equal iff isomorphic"""
    c = ensure_valid(b.complex)
    labels = c.labels
    best_key = None
    best_order: List[int] = []
    for root in range(c.dart_count):
        order = _relabelling_from(c, root)
        new = [0] * c.dart_count
        for pos, d in enumerate(order):
            new[d] = pos
        key = tuple(
            (new[c.alpha[d]], new[c.sigma[d]], b.dart_mult[d],
             labels.get(c.edge_of(d), "") if with_labels else "")
            for d in order
        )
        if best_key is None or key < best_key:
            best_key = key
            best_order = order

    relabeling = [0] * c.dart_count
    for pos, d in enumerate(best_order):
        relabeling[d] = pos
    payload = {
        "alpha": [k[0] for k in best_key],
        "sigma": [k[1] for k in best_key],
        "mult": [k[2] for k in best_key],
    }
    if with_labels:
        payload["labels"] = [k[3] for k in best_key]
    encoding = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()
    return CanonicalForm(tuple(relabeling), encoding)


def canonical_complex(b: BrauerComplex) -> BrauerComplex:
    """The representative obtained by applying the canonical relabeling"""
    return b.relabel(canonical_form(b).relabeling)


def rooted_isomorphism(b1: BrauerComplex, root1: int, b2: BrauerComplex, root2: int,
                       with_mults: bool = True) -> Optional[List[int]]:
    """Dart map b1 -> b2 sending root1 to root2 and commuting with alpha and sigma.

    A connected map is rigid once one dart is placed, so there is at most one.
    """
    c1, c2 = b1.complex, b2.complex
    if c1.dart_count != c2.dart_count:
        return None
    image = [-1] * c1.dart_count
    used = [False] * c1.dart_count
    image[root1] = root2
    used[root2] = True
    queue = deque([root1])
    while queue:
        d = queue.popleft()
        e = image[d]
        if with_mults and b1.dart_mult[d] != b2.dart_mult[e]:
            return None
        for nxt, target in ((c1.alpha[d], c2.alpha[e]), (c1.sigma[d], c2.sigma[e])):
            if image[nxt] < 0:
                if used[target]:
                    return None
                image[nxt] = target
                used[target] = True
                queue.append(nxt)
            elif image[nxt] != target:
                return None
    return image if all(d >= 0 for d in image) else None


def random_complex(rng: random.Random, edges: int, max_mult: int = 1,
                   max_tries: int = 1000) -> BrauerComplex:
    """Random connected complex: random edge pairing against a random rotation"""
    n = 2 * edges
    for _ in range(max_tries):
        darts = list(range(n))
        rng.shuffle(darts)
        alpha = [0] * n
        for a, b in zip(darts[::2], darts[1::2]):
            alpha[a], alpha[b] = b, a
        sigma = list(range(n))
        rng.shuffle(sigma)
        c = RibbonComplex(tuple(alpha), tuple(sigma))
        if c.is_connected():
            mults = {v: rng.randint(1, max_mult) for v in c.vertices()}
            return BrauerComplex.from_vertex_mults(c, mults)
    raise ValidationError(f"no connected complex found with {edges} edges", code="disconnected")
