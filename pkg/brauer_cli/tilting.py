"""
Elementary tilting transformations C -> C(a) and the tilting complexes T_a.

Every move re-inserts darts of edge a into the rotations: a moved dart t is
placed immediately before alpha(p), where p = sigma^-1(t) is taken in the
original complex, so the end of a slides along its predecessor edge to the
far end of that edge. Type 1 (leaf) moves only the non-dangling dart; type 2
(loop bounding a face, sigma(x) = alpha(x)) moves both darts together in the
order x, alpha(x); type 3 moves each dart independently.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

from brauer_cli.algebra import AlgebraTable, TwoTermComplex, build_algebra, hom_complexes
from brauer_cli.config import Config
from brauer_cli.errors import EdgeError, SizeLimitError, ValidationError
from brauer_cli.quiver import derive_quiver
from brauer_cli.ribbon_core import (
    BrauerComplex,
    RibbonComplex,
    canonical_form,
    cycles_of,
    ensure_valid_brauer,
)

logger = logging.getLogger(__name__)


class MoveType(Enum):
    """The three tilting transformations"""
    LEAF_SHIFT = 1
    LOOP_SHIFT = 2
    GENERAL = 3


@dataclass(frozen=True)
class Move:
    """One applied transformation with the rotations before and after"""
    edge: int
    type: MoveType
    moved: Tuple[int, ...]
    before: Tuple[int, ...]
    after: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edge": self.edge,
            "type": self.type.value,
            "moved": list(self.moved),
            "sigma_before": list(self.before),
            "sigma_after": list(self.after),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Move":
        return cls(int(data["edge"]), MoveType(int(data["type"])), tuple(data["moved"]),
                   tuple(data["sigma_before"]), tuple(data["sigma_after"]))


def _check_edge(b: BrauerComplex, a: int) -> None:
    if not b.complex.has_edge(a):
        raise EdgeError(f"unknown edge {a}", code="unknown-edge")
    if b.edge_count < 2:
        raise EdgeError("tilting needs at least two edges", code="single-edge-complex")


def classify_edge(b: BrauerComplex, a: int) -> MoveType:
    """Leaf -> type 1, loop bounding a face -> type 2, anything else -> type 3"""
    _check_edge(b, a)
    c = b.complex
    darts = c.edge_darts(a)
    if any(c.sigma[d] == d for d in darts):
        return MoveType.LEAF_SHIFT
    if any(c.sigma[d] == c.alpha[d] for d in darts):
        return MoveType.LOOP_SHIFT
    return MoveType.GENERAL


def _placements(c: RibbonComplex, a: int, kind: MoveType) -> List[Tuple[int, int]]:
    """(dart, dart it is inserted in front of), in insertion order"""
    x, y = c.edge_darts(a)

    def landing(t: int) -> int:
        return c.alpha[c.sigma_inv[t]]

    if kind is MoveType.LEAF_SHIFT:
        t = y if c.sigma[x] == x else x
        return [(t, landing(t))]
    if kind is MoveType.LOOP_SHIFT:
        t = x if c.sigma[x] == c.alpha[x] else y
        target = landing(t)
        return [(t, target), (c.alpha[t], target)]
    return [(x, landing(x)), (y, landing(y))]


def apply_move(b: BrauerComplex, a: int) -> Tuple[BrauerComplex, Move]:
    """C(a): same darts, edges and vertex multiplicities, new rotation"""
    ensure_valid_brauer(b)
    kind = classify_edge(b, a)
    c = b.complex
    placements = _placements(c, a, kind)
    moved = {t for t, _ in placements}

    rotations = [[d for d in cycle if d not in moved] for cycle in cycles_of(c.sigma)]
    home = {}
    for i, rotation in enumerate(rotations):
        for d in rotation:
            home[d] = i
    dart_mult = list(b.dart_mult)
    for t, target in placements:
        rotation = rotations[home[target]]
        rotation.insert(rotation.index(target), t)
        home[t] = home[target]
        dart_mult[t] = b.dart_mult[target]

    sigma = [0] * c.dart_count
    for rotation in rotations:
        for pos, d in enumerate(rotation):
            sigma[d] = rotation[(pos + 1) % len(rotation)]
    result = BrauerComplex(RibbonComplex(c.alpha, tuple(sigma), c.edge_labels), tuple(dart_mult))
    move = Move(a, kind, tuple(t for t, _ in placements), c.sigma, tuple(sigma))
    logger.debug("type %d move on edge %d", kind.value, a)
    return result, move


@dataclass
class MoveLog:
    """Moves applied from a source complex, with the canonical digest after each"""
    source: str
    moves: List[Move] = field(default_factory=list)
    digests: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)

    def append(self, move: Move, result: BrauerComplex) -> None:
        self.moves.append(move)
        self.digests.append(canonical_form(result).digest)

    def extend(self, other: "MoveLog") -> None:
        self.moves.extend(other.moves)
        self.digests.extend(other.digests)

    @property
    def final(self) -> str:
        return self.digests[-1] if self.digests else self.source

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "steps": [{"edge": m.edge, "type": m.type.value, "digest": h}
                      for m, h in zip(self.moves, self.digests)],
        }


def replay(b: BrauerComplex, log: MoveLog) -> BrauerComplex:
    """Re-apply the logged moves, checking every intermediate digest"""
    if canonical_form(b).digest != log.source:
        raise ValidationError("replay source does not match the log", code="replay-mismatch")
    current = b
    for step, (move, digest) in enumerate(zip(log.moves, log.digests), 1):
        current, _ = apply_move(current, move.edge)
        if canonical_form(current).digest != digest:
            raise ValidationError(f"replay diverges at step {step}", code="replay-mismatch")
    return current


@dataclass
class TiltingComplexSpec:
    """T_a = sum over j of T_aj: stalks P_j for j != a, a two-term complex at a"""
    edge: int
    type: MoveType
    table: AlgebraTable
    terms: Dict[Hashable, TwoTermComplex]

    @property
    def main(self) -> TwoTermComplex:
        return self.terms[self.edge]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edge": self.edge,
            "type": self.type.value,
            "T_aa": self.main.to_dict(self.table),
            "stalks": [str(j) for j in self.terms if j != self.edge],
        }


def _main_term_sources(c: RibbonComplex, a: int) -> List[Tuple[int, int]]:
    """(start dart, length) of the path into a preceding each end of a.

    Walk backwards around the vertex from each dart of a, skipping a's own
    darts; a dart that returns to itself is a dangling end and contributes
    nothing.
    """
    sources = []
    for t in c.edge_darts(a):
        u = c.sigma_inv[t]
        length = 1
        while c.edge_of(u) == a and u != t:
            u = c.sigma_inv[u]
            length += 1
        if u != t:
            sources.append((u, length))
    return sources


def build_tilting_complex(b: BrauerComplex, a: int,
                          table: Optional[AlgebraTable] = None) -> TiltingComplexSpec:
    """Stalk complexes plus P_{a1} (+) P_{a2} -> P_a with the preceding arrows as differential"""
    kind = classify_edge(b, a)
    table = table or build_algebra(derive_quiver(b))
    c = b.complex
    sources = _main_term_sources(c, a)
    main = TwoTermComplex.build(
        [c.edge_of(u) for u, _ in sources],
        [a],
        [[table.element(table.path(u, length))] for u, length in sources],
    )
    terms: Dict[Hashable, TwoTermComplex] = {}
    for j in c.edges():
        terms[j] = main if j == a else TwoTermComplex.stalk(j)
    return TiltingComplexSpec(a, kind, table, terms)


def hom_vanishing_report(tc: TiltingComplexSpec) -> List[Tuple[Hashable, Hashable, int, int]]:
    """Every (j, k, shift, dim) with a nonzero Hom(T_aj, T_ak[shift]), shift = +-1"""
    nonzero = []
    for j, X in tc.terms.items():
        for k, Y in tc.terms.items():
            if j != tc.edge and k != tc.edge:
                continue
            for shift in (-1, 1):
                dim = hom_complexes(tc.table, X, Y, shift)
                if dim:
                    nonzero.append((j, k, shift, dim))
    return nonzero


@dataclass
class EndomorphismReport:
    """dim End(T_a) against dim of the algebra of C(a)"""
    edge: int
    end_dim: int
    algebra_dim: int

    @property
    def ok(self) -> bool:
        return self.end_dim == self.algebra_dim

    def to_dict(self) -> Dict[str, Any]:
        return {"edge": self.edge, "ok": self.ok, "end_dim": self.end_dim,
                "algebra_dim": self.algebra_dim}


def endomorphism_check(b: BrauerComplex, a: int, config: Optional[Config] = None) -> EndomorphismReport:
    """Compare dim End(T_a) with the dimension of the algebra of C(a)"""
    config = config or Config()
    _check_edge(b, a)
    if b.edge_count > config.ENDO_MAX_EDGES or max(b.dart_mult) > config.ENDO_MAX_MULT:
        raise SizeLimitError(
            f"endomorphism check limited to {config.ENDO_MAX_EDGES} edges "
            f"and multiplicity {config.ENDO_MAX_MULT}")
    tc = build_tilting_complex(b, a)
    total = 0
    for X in tc.terms.values():
        for Y in tc.terms.values():
            total += hom_complexes(tc.table, X, Y, 0)
    moved, _ = apply_move(b, a)
    return EndomorphismReport(a, total, build_algebra(derive_quiver(moved)).dim)


def moves_from(b: BrauerComplex, edges: Optional[Sequence[int]] = None) -> List[Tuple[BrauerComplex, Move]]:
    """All single moves out of b"""
    if b.edge_count < 2:
        return []
    return [apply_move(b, a) for a in (edges if edges is not None else b.edges())]
