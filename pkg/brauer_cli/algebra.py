"""
Exact model of the symmetric special biserial algebra of a Brauer complex.

Basis: one idempotent e_r and one socle element s_r per quiver vertex r, and
the proper paths p(d, l) along A-cycles, 1 <= l <= f*len - 1, for every
non-formal arrow d. Paths compose left to right. Projectives are left
modules P_r = Lambda e_r, so Hom(P_a, P_b) = e_a Lambda e_b acts by right
multiplication and composing f then g is the product f*g. All arithmetic is
over the rationals via sympy's DomainMatrix.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from brauer_cli.quiver import ExtendedQuiver

logger = logging.getLogger(__name__)

Vector = Dict[int, object]


# ---------------------------------------------------------------- linear algebra

def _to_qq(value) -> object:
    return value if not isinstance(value, int) else QQ(value)


def _matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_to_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def _dense(vectors: Sequence[Vector], ncols: int) -> List[List]:
    rows = []
    for vec in vectors:
        row = [QQ(0)] * ncols
        for i, coeff in vec.items():
            row[i] = _to_qq(coeff)
        rows.append(row)
    return rows


def rank_of(vectors: Sequence[Vector], ncols: int) -> int:
    """Rank of a family of sparse vectors"""
    vectors = [v for v in vectors if v]
    if not vectors or ncols == 0:
        return 0
    return _matrix(_dense(vectors, ncols), ncols).rank()


def _rref_rows(rows: List[List], ncols: int) -> Tuple[List[List], Tuple[int, ...]]:
    reduced, pivots = _matrix(rows, ncols).rref()
    dense = reduced.to_Matrix().tolist()
    return [[QQ.from_sympy(x) for x in row] for row in dense[:len(pivots)]], tuple(pivots)


def nullspace_of(rows: Sequence[Vector], ncols: int) -> List[Vector]:
    """Basis of {x : row . x = 0 for every row}"""
    rows = [r for r in rows if r]
    if ncols == 0:
        return []
    if not rows:
        return [{j: QQ(1)} for j in range(ncols)]
    reduced, pivots = _rref_rows(_dense(rows, ncols), ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec: Vector = {free: QQ(1)}
        for row, pivot in zip(reduced, pivots):
            if row[free]:
                vec[pivot] = -row[free]
        basis.append(vec)
    return basis


def span_basis(vectors: Sequence[Vector], ncols: int) -> List[Vector]:
    """Echelon basis of the span of the given vectors"""
    vectors = [v for v in vectors if v]
    if not vectors or ncols == 0:
        return []
    reduced, _ = _rref_rows(_dense(vectors, ncols), ncols)
    return [{j: x for j, x in enumerate(row) if x} for row in reduced]


def _add(target: Vector, vec: Vector, scale=1) -> None:
    for i, coeff in vec.items():
        value = target.get(i, 0) + scale * coeff
        if value:
            target[i] = value
        else:
            target.pop(i, None)


# ---------------------------------------------------------------- algebra table

@dataclass(frozen=True)
class BasisElement:
    """e_r, p(dart, length) or s_r"""
    kind: str
    vertex: Optional[Hashable] = None
    dart: Optional[int] = None
    length: int = 0

    def __str__(self) -> str:
        if self.kind == "p":
            return f"p({self.dart},{self.length})"
        return f"{self.kind}_{self.vertex}"


@dataclass
class AlgebraTable:
    """Basis and sparse multiplication table of the algebra"""
    quiver: ExtendedQuiver
    basis: List[BasisElement]
    ends: List[Tuple[Hashable, Hashable]]
    mult_table: Dict[Tuple[int, int], int]
    index: Dict[BasisElement, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._right: Dict[int, List[Tuple[int, int]]] = {}
        for (i, j), k in self.mult_table.items():
            self._right.setdefault(i, []).append((j, k))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idempotent(self, r: Hashable) -> int:
        return self.index[BasisElement("e", vertex=r)]

    def socle(self, r: Hashable) -> int:
        return self.index[BasisElement("s", vertex=r)]

    def path(self, dart: int, length: int) -> int:
        """Basis index of the path of given length starting with arrow ``dart``"""
        q = self.quiver
        full = q.mult_of_arrow(dart) * q.a_length(dart)
        if length == full:
            return self.socle(q.arrows[dart].source)
        return self.index[BasisElement("p", dart=dart, length=length)]

    def element(self, index: int) -> Vector:
        return {index: QQ(1)}

    def one(self) -> Vector:
        return {self.idempotent(r): QQ(1) for r in self.quiver.vertices}

    def multiply(self, x: Vector, y: Vector) -> Vector:
        result: Vector = {}
        for i, cx in x.items():
            for j, k in self._right.get(i, ()):
                cy = y.get(j)
                if cy:
                    _add(result, {k: cx * cy})
        return result

    def commutator(self, x: Vector, y: Vector) -> Vector:
        result = self.multiply(x, y)
        _add(result, self.multiply(y, x), -1)
        return result

    def hom_basis(self, a: Hashable, b: Hashable) -> List[int]:
        """Basis indices of e_a Lambda e_b, i.e. Hom(P_a, P_b)"""
        return [i for i, end in enumerate(self.ends) if end == (a, b)]

    def socle_elements(self) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b.kind == "s"]

    def generators(self) -> List[int]:
        """Idempotents, arrows and socle elements"""
        gens = [i for i, b in enumerate(self.basis) if b.kind in ("e", "s")]
        for arrow in self.quiver.arrows:
            if not arrow.formal:
                gens.append(self.path(arrow.index, 1))
        return gens

    def structure_check(self) -> List[str]:
        """Associativity on all basis triples and two-sided unit; returns failures"""
        failures = []
        one = self.one()
        for i in range(self.dim):
            x = self.element(i)
            if self.multiply(one, x) != x or self.multiply(x, one) != x:
                failures.append(f"unit fails on {self.basis[i]}")
        left: Dict[int, List[Tuple[int, int]]] = {}
        for (i, j), k in self.mult_table.items():
            left.setdefault(j, []).append((i, k))
        # (xy)z nonzero
        for (i, j), ij in self.mult_table.items():
            for k, ijk in self._right.get(ij, ()):
                jk = self.mult_table.get((j, k))
                if jk is None or self.mult_table.get((i, jk)) != ijk:
                    failures.append(f"associativity fails on {self.basis[i]}, {self.basis[j]}, {self.basis[k]}")
        # x(yz) nonzero
        for (j, k), jk in self.mult_table.items():
            for i, ijk in left.get(jk, ()):
                ij = self.mult_table.get((i, j))
                if ij is None or self.mult_table.get((ij, k)) != ijk:
                    failures.append(f"associativity fails on {self.basis[i]}, {self.basis[j]}, {self.basis[k]}")
        return failures


def build_algebra(q: ExtendedQuiver) -> AlgebraTable:
    """Basis and multiplication table from the extended quiver"""
    basis: List[BasisElement] = []
    ends: List[Tuple[Hashable, Hashable]] = []
    for r in q.vertices:
        basis.append(BasisElement("e", vertex=r))
        ends.append((r, r))

    def walk(d: int, steps: int) -> int:
        for _ in range(steps):
            d = q.a_next(d)
        return d

    for arrow in q.arrows:
        full = q.mult_of_arrow(arrow.index) * q.a_length(arrow.index)
        for length in range(1, full):
            basis.append(BasisElement("p", dart=arrow.index, length=length))
            ends.append((arrow.source, q.arrows[walk(arrow.index, length)].source))
    for r in q.vertices:
        basis.append(BasisElement("s", vertex=r))
        ends.append((r, r))

    index = {b: i for i, b in enumerate(basis)}
    table: Dict[Tuple[int, int], int] = {}

    def path_index(d: int, length: int) -> int:
        full = q.mult_of_arrow(d) * q.a_length(d)
        if length == full:
            return index[BasisElement("s", vertex=q.arrows[d].source)]
        return index[BasisElement("p", dart=d, length=length)]

    for i, b in enumerate(basis):
        start, end = ends[i]
        table[(index[BasisElement("e", vertex=start)], i)] = i
        table[(i, index[BasisElement("e", vertex=end)])] = i
        if b.kind != "p":
            continue
        full = q.mult_of_arrow(b.dart) * q.a_length(b.dart)
        nxt = walk(b.dart, b.length)
        for length in range(1, full - b.length + 1):
            table[(i, index[BasisElement("p", dart=nxt, length=length)])] = path_index(b.dart, b.length + length)

    logger.debug("built algebra of dimension %d with %d nonzero products", len(basis), len(table))
    return AlgebraTable(q, basis, ends, table)


# ---------------------------------------------------------------- center

@dataclass
class CenterBasis:
    """Symbolic basis of the center: 1, m_{i,t}, q_alpha, s_r"""
    one_part: str
    m_part: List[Tuple[int, int]]
    q_part: List[int]
    s_part: List[Hashable]
    dim_Z: int
    nilpotency: List[int]

    def to_dict(self) -> Dict[str, object]:
        return {
            "one": self.one_part,
            "m": [{"a_cycle": i, "power": t} for i, t in self.m_part],
            "q": self.q_part,
            "s": [str(r) for r in self.s_part],
            "dim_Z": self.dim_Z,
            "nilpotency": self.nilpotency,
        }


def center_oracle(a: AlgebraTable) -> List[Vector]:
    """Basis of the center: solve z g = g z for all generators g"""
    rows: List[Vector] = []
    gens = [a.element(g) for g in a.generators()]
    # row (g, k): coefficient of basis k in [b_j, g] for unknown z = sum z_j b_j
    for g in gens:
        images = [a.commutator(a.element(j), g) for j in range(a.dim)]
        coords: Dict[int, Vector] = {}
        for j, image in enumerate(images):
            for k, coeff in image.items():
                coords.setdefault(k, {})[j] = coeff
        rows.extend(coords.values())
    return nullspace_of(rows, a.dim)


def center_formula(q: ExtendedQuiver) -> CenterBasis:
    """Symbolic center basis; dim_Z = 1 + sum(f_i - 1) + #q + n"""
    m_part = [(i, t) for i, m in enumerate(q.a_cycle_mult) for t in range(1, m)]
    # loop arrows that form a G-cycle of their own (perimeter-one faces)
    q_part = [arrow.index for arrow in q.arrows
              if arrow.source == arrow.target and len(q.g_cycles[arrow.g_cycle]) == 1
              and q.a_length(arrow.index) > 1]
    s_part = list(q.vertices)
    dim = 1 + len(m_part) + len(q_part) + len(s_part)
    # m_{i,1}^t = m_{i,t} stays outside the socle for t < f_i
    nilpotency = sorted(1 + sum(1 for j, _ in m_part if j == i) for i in range(len(q.a_cycles)))
    return CenterBasis("1", m_part, q_part, s_part, dim, nilpotency)


def m_element(a: AlgebraTable, cycle: int, t: int) -> Vector:
    """m_{i,t}: sum of the paths of length t*len around A-cycle i"""
    q = a.quiver
    darts = q.a_cycles[cycle]
    vec: Vector = {}
    for d in darts:
        if q.arrows[d].formal:
            continue
        _add(vec, a.element(a.path(d, t * len(darts))))
    return vec


def q_element(a: AlgebraTable, arrow: int) -> Vector:
    """q_alpha: the path completing the loop alpha to the socle"""
    q = a.quiver
    full = q.mult_of_arrow(arrow) * q.a_length(arrow)
    return a.element(a.path(q.a_next(arrow), full - 1))


def center_elements(a: AlgebraTable, basis: CenterBasis) -> List[Vector]:
    """Materialize a symbolic center basis inside the table"""
    elements = [a.one()]
    elements += [m_element(a, i, t) for i, t in basis.m_part]
    elements += [q_element(a, x) for x in basis.q_part]
    elements += [a.element(a.socle(r)) for r in basis.s_part]
    return elements


def is_central(a: AlgebraTable, z: Vector) -> bool:
    return all(not a.commutator(z, a.element(g)) for g in a.generators())


def nilpotency_multiset(a: AlgebraTable, center: Optional[List[Vector]] = None) -> List[int]:
    """Nilpotency indices of Z/Soc Z recovered from the center alone.

    With d_t = dim((rad Z)^t + Soc Z) - dim Soc Z, the number of generators of
    index m >= 2 is (d_{m-1} - d_m) - (d_m - d_{m+1}); the rest have index 1.
    The q_alpha elements count with the socle: on a lone loop of multiplicity
    one they multiply into the socle without lying in it.
    """
    n = a.dim
    center = center if center is not None else center_oracle(a)
    idempotents = [i for i, b in enumerate(a.basis) if b.kind == "e"]

    # rad Z = Z intersected with the radical: combinations with no idempotent part
    constraint_rows = [{c: z.get(i, 0) for c, z in enumerate(center) if z.get(i)} for i in idempotents]
    radical = []
    for combo in nullspace_of(constraint_rows, len(center)):
        vec: Vector = {}
        for c, coeff in combo.items():
            _add(vec, center[c], coeff)
        radical.append(vec)
    radical = span_basis(radical, n)

    # Soc Z = elements of Z killed by rad Z
    products = [[a.multiply(z, r) for r in radical] for z in center]
    rows: List[Vector] = []
    for r_index in range(len(radical)):
        coords: Dict[int, Vector] = {}
        for c in range(len(center)):
            for k, coeff in products[c][r_index].items():
                coords.setdefault(k, {})[c] = coeff
        rows.extend(coords.values())
    socle = []
    for combo in nullspace_of(rows, len(center)):
        vec = {}
        for c, coeff in combo.items():
            _add(vec, center[c], coeff)
        socle.append(vec)
    socle += [q_element(a, x) for x in center_formula(a.quiver).q_part]
    socle = span_basis(socle, n)
    socle_dim = len(socle)

    dims = [len(center) - socle_dim]
    power = radical
    while True:
        d = rank_of(power + socle, n) - socle_dim
        dims.append(d)
        if d == 0 or not power:
            break
        power = span_basis([a.multiply(p, r) for p in power for r in radical], n)
    dims.append(0)
    dims.append(0)

    counts: List[int] = []
    for m in range(2, len(dims) - 1):
        count = (dims[m - 1] - dims[m]) - (dims[m] - dims[m + 1])
        counts.extend([m] * count)
    k = len(a.quiver.a_cycles)
    return sorted([1] * (k - len(counts)) + counts)


def product_relations_check(a: AlgebraTable) -> List[str]:
    """m_{i,t} m_{j,u} = delta_ij m_{i,t+u} modulo the socle"""
    q = a.quiver
    socle = set(a.socle_elements())
    failures = []
    pairs = [(i, t) for i, m in enumerate(q.a_cycle_mult) for t in range(1, m)]
    for i, t in pairs:
        for j, u in pairs:
            product = {k: v for k, v in a.multiply(m_element(a, i, t), m_element(a, j, u)).items()
                       if k not in socle}
            expected: Vector = {}
            if i == j and t + u < q.a_cycle_mult[i]:
                expected = m_element(a, i, t + u)
            if product != expected:
                failures.append(f"m_({i},{t}) * m_({j},{u})")
    return failures


# ---------------------------------------------------------------- complexes

@dataclass(frozen=True)
class TwoTermComplex:
    """Complex of projectives: sum P_source in degree -1 -> sum P_target in degree 0"""
    source: Tuple[Hashable, ...]
    target: Tuple[Hashable, ...]
    differential: Tuple[Tuple[Tuple[Tuple[int, int], ...], ...], ...] = ()

    @classmethod
    def build(cls, source: Sequence[Hashable], target: Sequence[Hashable],
              differential: Sequence[Sequence[Vector]]) -> "TwoTermComplex":
        frozen = tuple(tuple(tuple(sorted(entry.items())) for entry in row) for row in differential)
        return cls(tuple(source), tuple(target), frozen)

    @classmethod
    def stalk(cls, vertex: Hashable) -> "TwoTermComplex":
        """P_vertex alone, placed in degree -1"""
        return cls((vertex,), (), ((),))

    def entry(self, k: int, l: int) -> Vector:
        return {i: QQ(c) for i, c in self.differential[k][l]}

    def is_valid(self, a: AlgebraTable) -> bool:
        """Each entry lies in Hom(P_source, P_target)"""
        for k, s in enumerate(self.source):
            for l, t in enumerate(self.target):
                allowed = set(a.hom_basis(s, t))
                if any(i not in allowed for i, _ in self.differential[k][l]):
                    return False
        return True

    def to_dict(self, a: Optional[AlgebraTable] = None) -> Dict[str, object]:
        def show(entry):
            if a is None:
                return [[i, c] for i, c in entry]
            return [f"{c}*{a.basis[i]}" for i, c in entry]
        return {
            "degree_-1": [str(s) for s in self.source],
            "degree_0": [str(t) for t in self.target],
            "differential": [[show(entry) for entry in row] for row in self.differential
                             if self.target],
        }


def _matrix_product(a: AlgebraTable, left: List[List[Vector]], right: List[List[Vector]],
                    rows: int, inner: int, cols: int) -> List[List[Vector]]:
    result = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            x = left[i][k]
            if not x:
                continue
            for j in range(cols):
                y = right[k][j]
                if y:
                    _add(result[i][j], a.multiply(x, y))
    return result


def _differential(X: TwoTermComplex) -> List[List[Vector]]:
    return [[X.entry(k, l) for l in range(len(X.target))] for k in range(len(X.source))]


def _unknowns(a: AlgebraTable, rows: Sequence[Hashable], cols: Sequence[Hashable]):
    """Coordinates of Hom(sum P_rows, sum P_cols): (row, col, basis index)"""
    return [(i, j, b) for i, r in enumerate(rows) for j, c in enumerate(cols) for b in a.hom_basis(r, c)]


def _flatten(blocks: Sequence[List[List[Vector]]], dim: int) -> Vector:
    vec: Vector = {}
    offset = 0
    for block in blocks:
        for row in block:
            for entry in row:
                for k, coeff in entry.items():
                    vec[offset + k] = coeff
                offset += dim
    return vec


def _single(rows: int, cols: int, i: int, j: int, b: int) -> List[List[Vector]]:
    mat = [[{} for _ in range(cols)] for _ in range(rows)]
    mat[i][j] = {b: QQ(1)}
    return mat


def _rank_images(images: Sequence[Vector]) -> int:
    width = max((max(v) for v in images if v), default=-1) + 1
    return rank_of(images, width)


def _homotopy_images(a: AlgebraTable, X: TwoTermComplex, Y: TwoTermComplex) -> Tuple[int, List[Vector]]:
    """Images h -> (d_X h, h d_Y) for h in Hom(X^0, Y^-1)"""
    dX, dY = _differential(X), _differential(Y)
    xs, xt, ys, yt = len(X.source), len(X.target), len(Y.source), len(Y.target)
    images = []
    unknowns = _unknowns(a, X.target, Y.source)
    for i, j, b in unknowns:
        h = _single(xt, ys, i, j, b)
        images.append(_flatten([
            _matrix_product(a, dX, h, xs, xt, ys),
            _matrix_product(a, h, dY, xt, ys, yt),
        ], a.dim))
    return len(unknowns), images


def hom_complexes(a: AlgebraTable, X: TwoTermComplex, Y: TwoTermComplex, shift: int) -> int:
    """dim Hom in the homotopy category from X to Y[shift]"""
    if abs(shift) > 1:
        return 0
    dX, dY = _differential(X), _differential(Y)
    xs, xt, ys, yt = len(X.source), len(X.target), len(Y.source), len(Y.target)

    if shift == -1:
        count, images = _homotopy_images(a, X, Y)
        return count - _rank_images(images)

    if shift == 1:
        images = []
        for i, j, b in _unknowns(a, X.source, Y.source):
            h = _single(xs, ys, i, j, b)
            images.append(_flatten([_matrix_product(a, h, dY, xs, ys, yt)], a.dim))
        for i, j, b in _unknowns(a, X.target, Y.target):
            h = _single(xt, yt, i, j, b)
            images.append(_flatten([_matrix_product(a, dX, h, xs, xt, yt)], a.dim))
        return len(_unknowns(a, X.source, Y.target)) - _rank_images(images)

    # chain maps (f^-1, f^0) with d_X f^0 = f^-1 d_Y, modulo homotopy
    images = []
    low = _unknowns(a, X.source, Y.source)
    high = _unknowns(a, X.target, Y.target)
    for i, j, b in low:
        f = _single(xs, ys, i, j, b)
        product = _matrix_product(a, f, dY, xs, ys, yt)
        images.append(_flatten([[[{k: -c for k, c in e.items()} for e in row] for row in product]], a.dim))
    for i, j, b in high:
        f = _single(xt, yt, i, j, b)
        images.append(_flatten([_matrix_product(a, dX, f, xs, xt, yt)], a.dim))
    chain_maps = len(low) + len(high) - _rank_images(images)
    _, homotopies = _homotopy_images(a, X, Y)
    return chain_maps - _rank_images(homotopies)


def end_dim(a: AlgebraTable, r: Hashable) -> int:
    return len(a.hom_basis(r, r))


