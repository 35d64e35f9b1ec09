"""
Constructive classification of genus-0 Brauer complexes.

Two genus-0 complexes are chain equivalent exactly when they have the same
multiset of face perimeters and the same multiset of vertex multiplicities.
Witnesses are built in stages: ``reduce`` gathers every edge at the vertex
with the largest label, and local maneuvers then merge outer vertices,
transpose faces, balance double perimeters and interchange labels until the
complex is the representative produced by ``canonical_target``. Each
maneuver is a breadth-first search that moves only the edges near the
change; a search over the whole complex is the last resort.
"""
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Callable, Collection, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from brauer_cli.config import Config
from brauer_cli.errors import (
    EdgeError,
    HasLeavesError,
    InfeasibleTargetError,
    NonzeroGenusError,
    SearchExhaustedError,
    WrongTypeError,
)
from brauer_cli.invariants import signature
from brauer_cli.ribbon_core import (
    BrauerComplex,
    RibbonComplex,
    canonical_form,
    ensure_valid,
    ensure_valid_brauer,
    from_rotations,
    rooted_isomorphism,
)
from brauer_cli.tilting import Move, MoveLog, MoveType, apply_move

logger = logging.getLogger(__name__)

__all__ = [
    "DoublePerimeters", "DualTree", "EquivalenceVerdict", "MoveLog", "ReducedForm",
    "canonical_target", "canonicalize_type1", "decide_equivalent", "double_perimeters",
    "dual_tree", "equalize_double_perimeters", "flip", "flip_over", "loop_graph",
    "reduce", "witness_to_canonical",
]


@dataclass
class ReducedForm:
    """All edges meet the hub; type 1 has no loops, type 2 only loops and leaves"""
    complex: BrauerComplex
    hub: int
    type: int
    log: MoveLog


@dataclass(frozen=True)
class DoublePerimeters:
    """Multiset of (total perimeter, external perimeter) per face"""
    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Sequence[Tuple[int, int]]) -> "DoublePerimeters":
        return cls(tuple(sorted((int(P), int(p)) for P, p in pairs)))

    def to_list(self) -> List[List[int]]:
        return [list(pair) for pair in self.pairs]


@dataclass(frozen=True)
class DualTree:
    """Plane tree dual to a one-vertex all-loop graph.

    Stored as a ribbon complex sharing the loop graph's darts: the tree's
    rotation is the loop graph's face permutation.
    """
    tree: RibbonComplex
    hub_mult: int = 1

    def nodes(self) -> List[int]:
        return self.tree.vertices()

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes())
        for e in self.tree.edges():
            graph.add_edge(self.tree.vertex_of(e), self.tree.vertex_of(self.tree.alpha[e]), edge=e)
        return graph

    def is_tree(self) -> bool:
        return nx.is_tree(self.graph())

    def degrees(self) -> Dict[int, int]:
        return {v: self.tree.degree(v) for v in self.nodes()}


@dataclass
class EquivalenceVerdict:
    """Outcome of the genus-0 decision, optionally with witnesses"""
    equivalent: bool
    distinguished_by: List[str] = field(default_factory=list)
    first: Optional[MoveLog] = None
    second: Optional[MoveLog] = None
    target: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"equivalent": self.equivalent}
        if not self.equivalent:
            data["distinguished_by"] = self.distinguished_by
        if self.first is not None and self.second is not None:
            data["witness"] = {
                "target": self.target,
                "first": self.first.to_dict(),
                "second": self.second.to_dict(),
            }
        return data


# ---------------------------------------------------------------- hub helpers

def _hub_vertex(b: BrauerComplex, hub_dart: int) -> int:
    return b.complex.vertex_of(hub_dart)


def _hub_degree(b: BrauerComplex, hub_dart: int) -> int:
    return b.complex.degree(_hub_vertex(b, hub_dart))


def _edges_at_hub(b: BrauerComplex, hub_dart: int) -> int:
    c = b.complex
    hub = _hub_vertex(b, hub_dart)
    return sum(1 for e in c.edges() if hub in (c.vertex_of(e), c.vertex_of(c.alpha[e])))


def _metric(b: BrauerComplex, hub_dart: int) -> Tuple[int, int]:
    return (_hub_degree(b, hub_dart), _edges_at_hub(b, hub_dart))


def _follow_hub(before: BrauerComplex, hub_dart: int, move: Move) -> int:
    """A dart of the hub that the move left in place"""
    rotation = before.complex.rotation(before.complex.vertex_of(hub_dart))
    return min(d for d in rotation if d not in move.moved)


def _is_reduced(b: BrauerComplex, hub_dart: int) -> bool:
    c = b.complex
    hub = _hub_vertex(b, hub_dart)
    loops = False
    for e in c.edges():
        ends = (c.vertex_of(e), c.vertex_of(c.alpha[e]))
        if hub not in ends:
            return False
        loops = loops or c.is_loop(e)
    if not loops:
        return True
    return all(c.is_loop(e) or c.is_leaf(e) for e in c.edges())


def _key(b: BrauerComplex, hub_dart: Optional[int] = None) -> str:
    if hub_dart is None:
        return canonical_form(b).digest
    hub = _hub_vertex(b, hub_dart)
    marked = tuple(-m if b.complex.vertex_of(d) == hub else m for d, m in enumerate(b.dart_mult))
    return canonical_form(BrauerComplex(b.complex, marked)).digest


def reduced_type2_hub(b: BrauerComplex) -> Optional[int]:
    """Hub vertex if every edge is a loop at it or a leaf hanging from it, with at least one loop"""
    c = b.complex
    for hub in c.vertices():
        ok = True
        loops = 0
        for e in c.edges():
            x, y = c.edge_darts(e)
            if c.vertex_of(x) == hub and c.vertex_of(y) == hub:
                loops += 1
            elif hub in (c.vertex_of(x), c.vertex_of(y)) and c.is_leaf(e):
                continue
            else:
                ok = False
                break
        if ok and loops:
            return hub
    return None


# ---------------------------------------------------------------- bounded search

@dataclass
class _Node:
    complex: BrauerComplex
    parent: Optional[str]
    move: Optional[Move]
    depth: int
    hub: Optional[int]


def _bounded_search(start: BrauerComplex,
                    goal: Callable[[BrauerComplex, Optional[int]], bool],
                    depth: int,
                    budget: int,
                    hub: Optional[int] = None,
                    keep: Optional[Callable[[BrauerComplex, Optional[int], BrauerComplex, Optional[int]], bool]] = None,
                    edges: Optional[Collection[int]] = None,
                    ) -> Tuple[BrauerComplex, MoveLog, Optional[int]]:
    """Breadth-first search over tilting moves up to ``depth`` moves and ``budget`` states.

    With ``edges`` only those edges are moved; edge ids survive every move.
    """
    log = MoveLog(canonical_form(start).digest)
    if goal(start, hub):
        return start, log, hub

    start_key = _key(start, hub)
    nodes: Dict[str, _Node] = {start_key: _Node(start, None, None, 0, hub)}
    queue = deque([start_key])
    found: Optional[str] = None
    while queue and found is None:
        key = queue.popleft()
        node = nodes[key]
        if node.depth >= depth:
            continue
        for a in node.complex.edges():
            if edges is not None and a not in edges:
                continue
            nxt, move = apply_move(node.complex, a)
            nhub = _follow_hub(node.complex, node.hub, move) if node.hub is not None else None
            if keep is not None and not keep(node.complex, node.hub, nxt, nhub):
                continue
            nkey = _key(nxt, nhub)
            if nkey in nodes:
                continue
            nodes[nkey] = _Node(nxt, key, move, node.depth + 1, nhub)
            if goal(nxt, nhub):
                found = nkey
                break
            if len(nodes) > budget:
                raise SearchExhaustedError(f"move search exceeded {budget} states")
            queue.append(nkey)

    if found is None:
        raise SearchExhaustedError(f"no move sequence of length <= {depth} reaches the goal")

    path: List[_Node] = []
    key = found
    while nodes[key].parent is not None:
        path.append(nodes[key])
        key = nodes[key].parent
    for node in reversed(path):
        log.append(node.move, node.complex)
    logger.debug("search reached goal in %d moves after %d states", len(path), len(nodes))
    end = nodes[found]
    return end.complex, log, end.hub


def _require_genus0(b: BrauerComplex) -> None:
    ensure_valid_brauer(b)
    if b.genus() != 0:
        raise NonzeroGenusError(f"complex has genus {b.genus()}, expected 0")


# ---------------------------------------------------------------- reduction

def default_hub(b: BrauerComplex) -> int:
    """Vertex of maximal degree, ties broken by smallest id"""
    c = b.complex
    return min(c.vertices(), key=lambda v: (-c.degree(v), v))


def reduce(b: BrauerComplex, hub: Optional[int] = None, config: Optional[Config] = None) -> ReducedForm:
    """Raise the hub degree move by move until every edge meets the hub.

    Single moves that raise (degree, edges at hub) are taken greedily; when
    none exists a bounded search through moves that never lower the hub
    degree finds the next improvement.
    """
    config = config or Config()
    _require_genus0(b)
    if b.edge_count < 2:
        raise EdgeError("reduction needs at least two edges", code="single-edge")
    hub_dart = default_hub(b) if hub is None else hub
    if not 0 <= hub_dart < b.dart_count:
        raise EdgeError(f"unknown vertex {hub}", code="unknown-vertex")

    current = b
    log = MoveLog(canonical_form(b).digest)
    while not _is_reduced(current, hub_dart):
        base = _metric(current, hub_dart)
        best = None
        for a in current.edges():
            nxt, move = apply_move(current, a)
            nhub = _follow_hub(current, hub_dart, move)
            score = _metric(nxt, nhub)
            if score > base and (best is None or score > best[0]):
                best = (score, nxt, move, nhub)
        if best is not None:
            _, current, move, hub_dart = best
            log.append(move, current)
            continue

        current, sublog, hub_dart = _bounded_search(
            current,
            goal=lambda c, h: _metric(c, h) > base or _is_reduced(c, h),
            depth=config.SEARCH_DEPTH,
            budget=config.SEARCH_BUDGET,
            hub=hub_dart,
            keep=lambda c, h, n, nh: _hub_degree(n, nh) >= _hub_degree(c, h),
        )
        log.extend(sublog)

    has_loops = any(current.complex.is_loop(e) for e in current.edges())
    return ReducedForm(current, _hub_vertex(current, hub_dart), 2 if has_loops else 1, log)


# ---------------------------------------------------------------- canonical targets

def _check_class(perimeters: Sequence[int], mults: Sequence[int]) -> Tuple[int, int]:
    total = sum(perimeters)
    if total % 2 or not perimeters or any(p < 1 for p in perimeters):
        raise InfeasibleTargetError(f"perimeters {list(perimeters)} do not bound a complex")
    n = total // 2
    vertices = n - len(perimeters) + 2
    if vertices < 1 or len(mults) != vertices or any(m < 1 for m in mults):
        raise InfeasibleTargetError(
            f"{len(mults)} multiplicities given, a genus-0 complex with these faces has {vertices} vertices")
    return n, vertices


def _necklace(counts: Sequence[int], mults: Optional[Sequence[int]] = None) -> BrauerComplex:
    """Hub and one second vertex joined by one edge per face, counts[i] leaves flushed into face i"""
    hub: List[str] = []
    leaves: List[str] = []
    for i, k in enumerate(counts):
        hub.append(f"b{i}")
        for j in range(k):
            hub.append(f"l{i}.{j}")
            leaves.append(f"l{i}.{j}")
    second = [f"b{i}" for i in reversed(range(len(counts)))]
    rotations = [hub, second] + [[leaf] for leaf in leaves]
    return from_rotations(rotations, mults)


def _type1_target(perimeters: Sequence[int], mults: Sequence[int]) -> BrauerComplex:
    """Necklace with faces in ascending order and labels descending from the hub outwards"""
    counts = [(P - 2) // 2 for P in sorted(perimeters)]
    return _necklace(counts, sorted(mults, reverse=True))


def _outer_listing(b: BrauerComplex, start: int) -> List[int]:
    """Vertices met around the hub from dart ``start``, each listed once"""
    c = b.complex
    hub = c.vertex_of(start)
    listing: List[int] = []
    d = start
    for _ in range(c.degree(hub)):
        v = c.vertex_of(c.alpha[d])
        if v != hub and v not in listing:
            listing.append(v)
        d = c.sigma[d]
    return listing


def _external_perimeters(faces: Sequence[int]) -> List[int]:
    """External perimeters for the type-2 target: minimal by parity, raised in descending face order"""
    externals = [1 if P % 2 else 2 for P in faces]
    odd = sum(1 for P in faces if P % 2)
    spare = (odd - 2) // 2
    for i in sorted(range(len(faces)), key=lambda i: (-faces[i], i)):
        while spare and externals[i] + 2 <= faces[i]:
            externals[i] += 2
            spare -= 1
    return externals


def _plane_tree(degrees: Sequence[int]) -> List[List[int]]:
    """Rotation of every node (neighbours ascending) for a tree with the given degrees"""
    prufer = [i for i, d in enumerate(degrees) for _ in range(d - 1)]
    tree = nx.from_prufer_sequence(prufer)
    return [sorted(tree.neighbors(v)) for v in range(len(degrees))]


def loop_graph(tree: DualTree) -> BrauerComplex:
    """One-vertex all-loop graph dual to a plane tree"""
    t = tree.tree
    sigma = tuple(t.sigma[t.alpha[d]] for d in range(t.dart_count))
    c = ensure_valid(RibbonComplex(t.alpha, sigma))
    return BrauerComplex(c, (tree.hub_mult,) * c.dart_count)


def _tree_darts(neighbours: Sequence[Sequence[int]]) -> Tuple[RibbonComplex, List[List[int]]]:
    """Tree complex from ordered neighbour lists, with the darts of every node.

    Edge {v, w} with v < w gets dart 2k at v and 2k + 1 at w.
    """
    index: Dict[Tuple[int, int], int] = {}
    for v, nbrs in enumerate(neighbours):
        for w in nbrs:
            index.setdefault((min(v, w), max(v, w)), len(index))
    node_darts = [[2 * index[(min(v, w), max(v, w))] + (v > w) for w in nbrs]
                  for v, nbrs in enumerate(neighbours)]
    alpha = [d ^ 1 for d in range(2 * len(index))]
    sigma = list(range(len(alpha)))
    for darts in node_darts:
        for pos, d in enumerate(darts):
            sigma[d] = darts[(pos + 1) % len(darts)]
    return ensure_valid(RibbonComplex(tuple(alpha), tuple(sigma))), node_darts


def tree_from_rotations(neighbours: Sequence[Sequence[int]], hub_mult: int = 1) -> DualTree:
    """Plane tree from ordered neighbour lists; node i is the i-th list"""
    tree, _ = _tree_darts(neighbours)
    return DualTree(tree, hub_mult)


def _type2_target(perimeters: Sequence[int], mults: Sequence[int]) -> BrauerComplex:
    """Rose of loops dual to a plane tree, leaves added to reach each face perimeter"""
    faces = sorted(perimeters)
    externals = _external_perimeters(faces)
    tree, node_darts = _tree_darts(_plane_tree(externals))
    rose = loop_graph(DualTree(tree)).complex

    rotation = list(rose.rotation(0))
    alpha = list(rose.alpha)
    for i, darts in enumerate(node_darts):
        # the face of node i is the orbit of its tree darts
        anchor = rose.alpha[darts[0]]
        for _ in range((faces[i] - externals[i]) // 2):
            inner, outer = len(alpha), len(alpha) + 1
            alpha.extend([outer, inner])
            rotation.insert(rotation.index(anchor) + 1, inner)

    n = len(alpha)
    sigma = list(range(n))
    for pos, d in enumerate(rotation):
        sigma[d] = rotation[(pos + 1) % len(rotation)]
    c = ensure_valid(RibbonComplex(tuple(alpha), tuple(sigma)))
    # labels descend around the hub, as in the necklace
    ordered = sorted(mults, reverse=True)
    value = {c.vertex_of(0): ordered[0]}
    for k, v in enumerate(_outer_listing(BrauerComplex(c), 0), 1):
        value[v] = ordered[k]
    return BrauerComplex(c, tuple(value[c.vertex_of(d)] for d in range(n)))


def canonical_target(perimeters: Sequence[int], mults: Sequence[int]) -> BrauerComplex:
    """The labeled canonical representative of a genus-0 class"""
    _check_class(perimeters, mults)
    if all(P % 2 == 0 for P in perimeters):
        return _type1_target(perimeters, mults)
    return _type2_target(perimeters, mults)


def _class_of(b: BrauerComplex) -> Tuple[List[int], List[int]]:
    return [f.perimeter for f in b.faces()], sorted(b.mult.values())


# ---------------------------------------------------------------- local maneuvers

def _shape_digest(b: BrauerComplex) -> str:
    """Canonical digest with every label set to 1"""
    return canonical_form(BrauerComplex(b.complex)).digest


def _edges_at(b: BrauerComplex, vertices: Iterable[int]) -> Set[int]:
    c = b.complex
    wanted = set(vertices)
    return {c.edge_of(d) for d in range(c.dart_count) if c.vertex_of(d) in wanted}


def _hub_darts(b: BrauerComplex, start: int) -> List[int]:
    """Rotation of the hub read from ``start``"""
    sigma = b.complex.sigma
    darts = [start]
    while sigma[darts[-1]] != start:
        darts.append(sigma[darts[-1]])
    return darts


def _inversions(values: Sequence[int], descending: bool = True) -> int:
    n = len(values)
    if descending:
        return sum(1 for i in range(n) for j in range(i + 1, n) if values[i] < values[j])
    return sum(1 for i in range(n) for j in range(i + 1, n) if values[i] > values[j])


def _maneuver(state: BrauerComplex,
              goal: Callable[[BrauerComplex, Optional[int]], bool],
              scopes: Sequence[Collection[int]],
              config: Config,
              hub: Optional[int] = None) -> Tuple[BrauerComplex, MoveLog, Optional[int]]:
    """Bounded search that moves only the edges of one scope; every edge is tried last"""
    everything = frozenset(state.edges())
    for scope in scopes:
        scope = frozenset(scope)
        if scope >= everything:
            break
        try:
            return _bounded_search(state, goal, config.SEARCH_DEPTH, config.MANEUVER_BUDGET,
                                   hub=hub, edges=scope)
        except SearchExhaustedError:
            logger.debug("maneuver on edges %s failed", sorted(scope))
    return _bounded_search(state, goal, config.SEARCH_DEPTH, config.MANEUVER_BUDGET, hub=hub)


def _label_hub(b: BrauerComplex) -> int:
    """Vertex with the largest label, then the largest degree"""
    c = b.complex
    return min(c.vertices(), key=lambda v: (-b.mult_of(v), -c.degree(v), v))


def _outer_vertices(b: BrauerComplex, hub_dart: int) -> List[int]:
    """Non-dangling vertices other than the hub"""
    c = b.complex
    hub = c.vertex_of(hub_dart)
    return [v for v in c.vertices() if v != hub and c.degree(v) > 1]


def _merge_outer(state: BrauerComplex, hub_dart: int,
                 config: Config) -> Tuple[BrauerComplex, MoveLog, int]:
    """Type-1 reduced graph down to one non-dangling vertex besides the hub.

    Two such vertices on a common face are merged by moves of that face's
    edges and of the edges at both vertices.
    """
    log = MoveLog(canonical_form(state).digest)
    while True:
        outer = _outer_vertices(state, hub_dart)
        if len(outer) < 2:
            return state, log, hub_dart
        c = state.complex
        scopes = []
        for face in c.faces():
            met = [v for v in dict.fromkeys(c.vertex_of(d) for d in face.darts) if v in outer]
            if len(met) >= 2:
                scopes.append({c.edge_of(d) for d in face.darts} | _edges_at(state, met[:2]))
        state, sublog, hub_dart = _maneuver(
            state,
            goal=lambda x, h, k=len(outer): _is_reduced(x, h) and len(_outer_vertices(x, h)) < k,
            scopes=sorted(scopes, key=len),
            config=config,
            hub=hub_dart,
        )
        log.extend(sublog)


def _face_counts(b: BrauerComplex, start: int) -> List[int]:
    """Leaves per face of a necklace, read around the hub from the edge dart ``start``"""
    c = b.complex
    counts: List[int] = []
    for d in _hub_darts(b, start):
        if c.degree(c.vertex_of(c.alpha[d])) > 1:
            counts.append(0)
        else:
            counts[-1] += 1
    return counts


def _sort_faces(state: BrauerComplex, hub_dart: int,
                config: Config) -> Tuple[BrauerComplex, MoveLog, int]:
    """Transpose neighbouring faces of a necklace until they ascend around the hub"""
    log = MoveLog(canonical_form(state).digest)
    while True:
        c = state.complex
        starts = [d for d in c.rotation(c.vertex_of(hub_dart)) if c.degree(c.vertex_of(c.alpha[d])) > 1]
        if not starts:
            return state, log, hub_dart
        start = min(starts, key=lambda d: _inversions(_face_counts(state, d), descending=False))
        counts = _face_counts(state, start)
        j = next((j for j in range(len(counts) - 1) if counts[j] > counts[j + 1]), None)
        if j is None:
            return state, log, hub_dart

        model = counts[:j] + [counts[j + 1], counts[j]] + counts[j + 2:]
        want = _shape_digest(_necklace(model))
        darts = _hub_darts(state, start)
        bounds = [i for i, d in enumerate(darts) if d in starts] + [len(darts)]
        # both faces with the edges that close them
        scope = {c.edge_of(d) for d in darts[bounds[j]:bounds[j + 2]]}
        scope.add(c.edge_of(darts[bounds[j + 2] % len(darts)]))
        state, sublog, hub_dart = _maneuver(
            state,
            goal=lambda x, h: _is_reduced(x, h) and _shape_digest(x) == want,
            scopes=[scope],
            config=config,
            hub=hub_dart,
        )
        log.extend(sublog)


def _swap_labels(b: BrauerComplex, u: int, v: int) -> BrauerComplex:
    c = b.complex
    swapped = {u: b.mult_of(v), v: b.mult_of(u)}
    return BrauerComplex(c, tuple(swapped.get(c.vertex_of(d), m) for d, m in enumerate(b.dart_mult)))


def _scope_between(b: BrauerComplex, start: int, u: int, v: int) -> Set[int]:
    """Edges at u and v and at the hub between their first appearances"""
    c = b.complex
    darts = _hub_darts(b, start)
    ends = [c.vertex_of(c.alpha[d]) for d in darts]
    lo, hi = sorted((ends.index(u), ends.index(v)))
    return {c.edge_of(d) for d in darts[lo:hi + 1]} | _edges_at(b, (u, v))


def _arrange_labels(state: BrauerComplex, hub_dart: int, target: BrauerComplex,
                    config: Config) -> Tuple[BrauerComplex, MoveLog, int]:
    """Interchange neighbouring outer vertices until the labels read as in the target.

    The target's hub holds dart 0 and its labels descend around the hub from
    there. Every interchange removes one inversion of the best reading.
    """
    log = MoveLog(canonical_form(state).digest)
    goal_digest = canonical_form(target).digest
    shape = BrauerComplex(target.complex)
    while canonical_form(state).digest != goal_digest:
        c = state.complex
        plain = BrauerComplex(c)
        starts = [d for d in c.rotation(c.vertex_of(hub_dart))
                  if rooted_isomorphism(shape, 0, plain, d, with_mults=False) is not None]
        if not starts:
            raise SearchExhaustedError("the complex does not have the shape of the target")

        def labels(d: int) -> List[int]:
            return [state.mult_of(v) for v in _outer_listing(state, d)]

        start = min(starts, key=lambda d: _inversions(labels(d)))
        listing = _outer_listing(state, start)
        values = labels(start)
        i = next((i for i in range(len(values) - 1) if values[i] < values[i + 1]), None)
        if i is None:
            raise SearchExhaustedError("outer labels are sorted but the hub label differs")
        u, v = listing[i], listing[i + 1]
        want = canonical_form(_swap_labels(state, u, v)).digest
        state, sublog, hub_dart = _maneuver(
            state,
            goal=lambda x, _h: canonical_form(x).digest == want,
            scopes=[_scope_between(state, start, u, v)],
            config=config,
            hub=hub_dart,
        )
        log.extend(sublog)
    return state, log, hub_dart


def _require_top_label(b: BrauerComplex, hub_dart: int) -> None:
    if b.mult_of(b.complex.vertex_of(hub_dart)) != max(b.mult.values()):
        raise SearchExhaustedError("the hub does not carry the largest label")


def _arrange_type1(state: BrauerComplex, hub_dart: int, target: BrauerComplex,
                   config: Config) -> Tuple[BrauerComplex, MoveLog]:
    """Merge outer vertices, sort the faces, then sort the labels"""
    _require_top_label(state, hub_dart)
    log = MoveLog(canonical_form(state).digest)
    for stage in (_merge_outer, _sort_faces):
        state, sublog, hub_dart = stage(state, hub_dart, config)
        log.extend(sublog)
    state, sublog, hub_dart = _arrange_labels(state, hub_dart, target, config)
    log.extend(sublog)
    return state, log


def _shape_type2(state: BrauerComplex, hub_dart: int, target: BrauerComplex,
                 config: Config) -> Tuple[BrauerComplex, MoveLog, int]:
    """Loop moves until the unlabeled graph is the target's"""
    want = _shape_digest(target)
    loops = [e for e in state.edges() if state.complex.is_loop(e)]
    return _maneuver(
        state,
        goal=lambda x, h: _is_reduced(x, h) and _shape_digest(x) == want,
        scopes=[loops],
        config=config,
        hub=hub_dart,
    )


def canonicalize_type1(r: ReducedForm, config: Optional[Config] = None) -> Tuple[BrauerComplex, MoveLog]:
    """Drive a type-1 reduced form to the canonical necklace.

    Local maneuvers come first; a search over the whole complex is the last resort.
    """
    config = config or Config()
    if r.type != 1:
        raise WrongTypeError("canonicalize_type1 expects a reduced form without loops")
    target = _type1_target(*_class_of(r.complex))
    try:
        return _arrange_type1(r.complex, r.hub, target, config)
    except SearchExhaustedError as e:
        logger.info("local maneuvers stopped (%s); searching the whole complex", e)
    digest = canonical_form(target).digest
    reached, log, _ = _bounded_search(
        r.complex,
        goal=lambda c, _h: canonical_form(c).digest == digest,
        depth=config.SEARCH_DEPTH * max(1, r.complex.edge_count),
        budget=config.SEARCH_BUDGET,
    )
    return reached, log


# ---------------------------------------------------------------- dual trees

def dual_tree(r: Union[ReducedForm, BrauerComplex]) -> DualTree:
    """Faces become tree nodes, loops become tree edges"""
    b = r.complex if isinstance(r, ReducedForm) else r
    _require_genus0(b)
    c = b.complex
    if any(c.is_leaf(e) for e in c.edges()):
        raise HasLeavesError("dual tree needs a graph made of loops only")
    if len(c.vertices()) != 1:
        raise WrongTypeError("dual tree needs a one-vertex graph")
    phi = tuple(c.phi(d) for d in range(c.dart_count))
    return DualTree(RibbonComplex(c.alpha, phi), b.dart_mult[0])


def _tree_move(tree: DualTree, edge: int, expected: MoveType) -> DualTree:
    graph = loop_graph(tree)
    moved, move = apply_move(graph, edge)
    if move.type is not expected:
        raise WrongTypeError(f"edge {edge} admits a type {move.type.value} move, not type {expected.value}")
    return dual_tree(moved)


def flip(tree: DualTree, edge: int) -> DualTree:
    """Type-3 move seen on the dual tree"""
    return _tree_move(tree, edge, MoveType.GENERAL)


def flip_over(tree: DualTree, edge: int) -> DualTree:
    """Type-2 move seen on the dual tree; the edge must end at a tree leaf"""
    return _tree_move(tree, edge, MoveType.LOOP_SHIFT)


# ---------------------------------------------------------------- double perimeters

def double_perimeters(b: BrauerComplex) -> DoublePerimeters:
    """(P, p) per face: p counts boundary darts whose edge borders another face"""
    c = b.complex
    owner = {}
    for face in c.faces():
        for d in face.darts:
            owner[d] = face.id
    pairs = []
    for face in c.faces():
        external = sum(1 for d in face.darts if owner[c.alpha[d]] != face.id)
        pairs.append((face.perimeter, external))
    return DoublePerimeters.of(pairs)


def _check_double_target(current: DoublePerimeters, target: DoublePerimeters) -> None:
    if any((P - p) % 2 for P, p in target.pairs):
        raise InfeasibleTargetError("external perimeter parity differs from total perimeter parity")
    if any(p < 1 or p > P for P, p in target.pairs):
        raise InfeasibleTargetError("external perimeters must lie between 1 and the face perimeter")
    if sorted(P for P, _ in target.pairs) != sorted(P for P, _ in current.pairs):
        raise InfeasibleTargetError("total perimeters differ from the complex's faces")
    if sum(p for _, p in target.pairs) != 2 * len(target.pairs) - 2:
        raise InfeasibleTargetError("external perimeters must sum to twice the face count minus two")


def balancing_steps(current: DoublePerimeters, target: DoublePerimeters) -> List[DoublePerimeters]:
    """Intermediate multisets, each moving 2 of external perimeter between two faces"""
    _check_double_target(current, target)
    now = sorted(current.pairs)
    goal = sorted(target.pairs)
    # faces of equal total perimeter are matched in ascending external order
    values = [p for _, p in now]
    wanted = [p for _, p in goal]
    totals = [P for P, _ in now]
    steps = []
    while values != wanted:
        k = next(i for i in range(len(values)) if values[i] < wanted[i])
        j = next(i for i in range(len(values)) if values[i] > wanted[i])
        if values[k] + 2 > totals[k] or values[j] < 3:
            raise InfeasibleTargetError(
                f"cannot move external perimeter from {now[j]} to {now[k]}",
                details=[f"current {sorted(current.pairs)}", f"target {goal}"])
        values[k] += 2
        values[j] -= 2
        steps.append(DoublePerimeters.of(zip(totals, values)))
    return steps


def _dual_paths(b: BrauerComplex, first: Tuple[int, int], second: Tuple[int, int]) -> List[Set[int]]:
    """Edges of the faces on a dual path from a face with pair ``first`` to one with ``second``"""
    c = b.complex
    faces = {face.id: face for face in c.faces()}
    owner = {d: face.id for face in faces.values() for d in face.darts}
    dual = nx.Graph()
    dual.add_nodes_from(faces)
    dual.add_edges_from((owner[d], owner[c.alpha[d]]) for d in range(c.dart_count)
                        if owner[d] != owner[c.alpha[d]])
    pairs = {fid: (face.perimeter, sum(1 for d in face.darts if owner[c.alpha[d]] != fid))
             for fid, face in faces.items()}
    scopes: List[Set[int]] = []
    for f1 in (fid for fid, pair in pairs.items() if pair == first):
        for f2 in (fid for fid, pair in pairs.items() if pair == second):
            if f1 == f2:
                continue
            scope = {c.edge_of(d) for fid in nx.shortest_path(dual, f1, f2) for d in faces[fid].darts}
            if scope not in scopes:
                scopes.append(scope)
    return sorted(scopes, key=len)


def _equalize(b1: BrauerComplex, target: DoublePerimeters, config: Config,
              hub: Optional[int] = None) -> Tuple[BrauerComplex, MoveLog, Optional[int]]:
    """One maneuver per balancing step on the faces between the two that trade perimeter"""
    log = MoveLog(canonical_form(b1).digest)
    state = b1
    for step in balancing_steps(double_perimeters(b1), target):
        gone = list((Counter(double_perimeters(state).pairs) - Counter(step.pairs)).elements())
        scopes = _dual_paths(state, gone[0], gone[1]) if len(gone) == 2 else []

        def reached(c: BrauerComplex, h: Optional[int], step=step) -> bool:
            at_hub = _is_reduced(c, h) if h is not None else reduced_type2_hub(c) is not None
            return at_hub and double_perimeters(c) == step

        try:
            state, sublog, hub = _maneuver(state, reached, scopes, config, hub=hub)
        except SearchExhaustedError:
            logger.debug("no local maneuver reaches %s; searching the whole complex", step.to_list())
            state, sublog, _ = _bounded_search(
                state,
                goal=lambda c, _h, step=step: reduced_type2_hub(c) is not None and double_perimeters(c) == step,
                depth=config.SEARCH_DEPTH,
                budget=config.SEARCH_BUDGET,
            )
            hub = reduced_type2_hub(state) if hub is not None else None
        log.extend(sublog)
    return state, log, hub


def equalize_double_perimeters(b1: BrauerComplex, target: DoublePerimeters,
                               config: Optional[Config] = None) -> Tuple[BrauerComplex, MoveLog]:
    """Move the type-2 reduced graph b1 to one with the target double perimeters"""
    config = config or Config()
    _require_genus0(b1)
    current = double_perimeters(b1)
    _check_double_target(current, target)
    hub = reduced_type2_hub(b1)
    if hub is None:
        raise WrongTypeError("double perimeters are balanced on type-2 reduced graphs")
    state, log, _ = _equalize(b1, target, config, hub)
    return state, log


# ---------------------------------------------------------------- decision

def _witness_by_maneuvers(b: BrauerComplex, target: BrauerComplex,
                          config: Config) -> Tuple[BrauerComplex, MoveLog]:
    """Reduce at the vertex with the largest label, then one local maneuver at a time"""
    reduced = reduce(b, hub=_label_hub(b), config=config)
    log = reduced.log
    if reduced.type == 1:
        state, sublog = _arrange_type1(reduced.complex, reduced.hub, target, config)
        log.extend(sublog)
    else:
        state, sublog, hub = _equalize(reduced.complex, double_perimeters(target), config, reduced.hub)
        log.extend(sublog)
        if hub is None:
            raise SearchExhaustedError("balancing lost the hub")
        state, sublog, hub = _shape_type2(state, hub, target, config)
        log.extend(sublog)
        _require_top_label(state, hub)
        state, sublog, hub = _arrange_labels(state, hub, target, config)
        log.extend(sublog)
    if canonical_form(state).digest != canonical_form(target).digest:
        raise SearchExhaustedError("local maneuvers ended away from the canonical form")
    return state, log


def witness_to_canonical(b: BrauerComplex, config: Optional[Config] = None) -> Tuple[BrauerComplex, MoveLog]:
    """Moves from b to the canonical representative of its class.

    Local maneuvers are tried first. If one of them runs out of depth or
    budget, the witness is searched again from b over the whole complex.
    """
    config = config or Config()
    _require_genus0(b)
    perimeters, mults = _class_of(b)
    target = canonical_target(perimeters, mults)
    target_digest = canonical_form(target).digest
    if b.edge_count < 2:
        if canonical_form(b).digest != target_digest:
            raise SearchExhaustedError("single-edge complex differs from its canonical form")
        return b, MoveLog(target_digest)

    try:
        return _witness_by_maneuvers(b, target, config)
    except SearchExhaustedError as e:
        logger.info("local maneuvers stopped (%s); searching the whole complex", e)

    reduced = reduce(b, config=config)
    log = reduced.log
    state = reduced.complex
    if reduced.type == 1:
        state, sublog = canonicalize_type1(reduced, config)
        log.extend(sublog)
        return state, log

    if reduced_type2_hub(state) is not None:
        state, sublog = equalize_double_perimeters(state, double_perimeters(target), config)
        log.extend(sublog)
    state, sublog, _ = _bounded_search(
        state,
        goal=lambda c, _h: canonical_form(c).digest == target_digest,
        depth=config.SEARCH_DEPTH * max(1, b.edge_count),
        budget=config.SEARCH_BUDGET,
    )
    log.extend(sublog)
    return state, log


def decide_equivalent(b1: BrauerComplex, b2: BrauerComplex, witness: bool = False,
                      config: Optional[Config] = None) -> EquivalenceVerdict:
    """Equivalent iff face perimeters and vertex multiplicities agree as multisets"""
    _require_genus0(b1)
    _require_genus0(b2)
    s1, s2 = signature(b1), signature(b2)
    differing = [name for name in ("perimeters", "mults") if getattr(s1, name) != getattr(s2, name)]
    if differing:
        return EquivalenceVerdict(False, differing)
    if not witness:
        return EquivalenceVerdict(True)
    end1, log1 = witness_to_canonical(b1, config)
    end2, log2 = witness_to_canonical(b2, config)
    return EquivalenceVerdict(True, [], log1, log2, canonical_form(end1).digest)
