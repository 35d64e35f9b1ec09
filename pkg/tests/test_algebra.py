import pytest

from brauer_cli.algebra import (
    TwoTermComplex,
    build_algebra,
    center_elements,
    center_formula,
    center_oracle,
    end_dim,
    hom_complexes,
    is_central,
    nilpotency_multiset,
    nullspace_of,
    product_relations_check,
    rank_of,
)
from brauer_cli.orbit import enumerate_complexes
from brauer_cli.quiver import derive_quiver
from brauer_cli.ribbon_core import BrauerComplex


def algebra_of(b):
    return build_algebra(derive_quiver(b))


def test_rank_and_nullspace():
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}]
    assert rank_of(rows, 3) == 2
    kernel = nullspace_of(rows, 3)
    assert len(kernel) == 1
    x = kernel[0]
    assert x.get(0, 0) == -x.get(1, 0) == x.get(2, 0)


@pytest.mark.parametrize("name, dim", [("e1", 2), ("e2", 18), ("e6", 4)])
def test_algebra_dimension(load, name, dim):
    assert algebra_of(load(name)).dim == dim


def test_segment_with_heavy_end_is_a_truncated_polynomial_ring(load):
    e1 = load("e1")
    a = algebra_of(BrauerComplex.from_vertex_mults(e1.complex, {0: 2}))
    assert a.dim == 3
    x = a.element(a.path(0, 1))
    assert a.multiply(x, x) == a.element(a.socle(0))


@pytest.mark.parametrize("name", ["e1", "e2", "e3", "e5", "e6", "e6_extended"])
def test_multiplication_is_associative_with_unit(load, name):
    assert algebra_of(load(name)).structure_check() == []


def test_socle_is_reached_by_full_turns(load):
    a = algebra_of(load("e2"))
    q = a.quiver
    for arrow in q.arrows:
        first = a.element(a.path(arrow.index, 1))
        rest = a.element(a.path(q.a_next(arrow.index), q.a_length(arrow.index) - 1))
        assert a.multiply(first, rest) == a.element(a.socle(arrow.source))


def test_hom_spaces_between_projectives(load):
    a = algebra_of(load("e2"))
    # e_r Lambda e_r = {e_r, s_r} for the three parallel edges
    assert all(end_dim(a, r) == 2 for r in a.quiver.vertices)
    assert sum(len(a.hom_basis(r, s)) for r in a.quiver.vertices for s in a.quiver.vertices) == a.dim


@pytest.mark.parametrize("name, dim", [("e1", 2), ("e6", 4), ("e2", 4)])
def test_center_dimension(load, name, dim):
    b = load(name)
    assert len(center_oracle(algebra_of(b))) == dim
    assert center_formula(derive_quiver(b)).dim_Z == dim


def test_loop_algebra_is_commutative(load):
    a = algebra_of(load("e6"))
    assert all(not a.commutator(a.element(i), a.element(j)) for i in range(a.dim) for j in range(a.dim))


@pytest.mark.parametrize("name", ["e1", "e2"])
def test_nilpotency_of_unit_multiplicities(load, name):
    assert nilpotency_multiset(algebra_of(load(name))) == [1, 1]


def test_nilpotency_recovers_multiplicities(load):
    e2 = load("e2")
    b = BrauerComplex.from_vertex_mults(e2.complex, {0: 3, 1: 2})
    assert nilpotency_multiset(algebra_of(b)) == [2, 3]


@pytest.mark.parametrize("mult, expected", [(1, [1]), (2, [2])])
def test_nilpotency_of_a_single_loop(load, mult, expected):
    b = BrauerComplex.from_vertex_mults(load("e6").complex, {0: mult})
    assert nilpotency_multiset(algebra_of(b)) == expected


def test_symbolic_nilpotency_follows_the_vertex_elements(load):
    e2 = load("e2")
    b = BrauerComplex.from_vertex_mults(e2.complex, {0: 3, 1: 2})
    basis = center_formula(derive_quiver(b))
    assert basis.nilpotency == [2, 3]
    assert basis.to_dict()["nilpotency"] == [2, 3]


def test_symbolic_center_elements_are_central(load):
    e3 = load("e3")
    b = BrauerComplex.from_vertex_mults(e3.complex, {0: 2})
    a = algebra_of(b)
    basis = center_formula(a.quiver)
    elements = center_elements(a, basis)
    assert all(is_central(a, z) for z in elements)
    assert rank_of(elements, a.dim) == basis.dim_Z


def test_product_relations(load):
    e2 = load("e2")
    b = BrauerComplex.from_vertex_mults(e2.complex, {0: 3, 1: 2})
    assert product_relations_check(algebra_of(b)) == []


def test_stalk_complexes_recover_projective_homs(load):
    a = algebra_of(load("e2"))
    P0, P2 = TwoTermComplex.stalk(0), TwoTermComplex.stalk(2)
    assert hom_complexes(a, P0, P0, 0) == 2
    assert hom_complexes(a, P0, P2, 0) == len(a.hom_basis(0, 2))
    assert hom_complexes(a, P0, P2, 1) == 0
    assert hom_complexes(a, P0, P2, -1) == 0


def test_differential_entries_lie_in_hom_spaces(load):
    a = algebra_of(load("e2"))
    d = TwoTermComplex.build([4], [0], [[a.element(a.path(4, 1))]])
    assert d.is_valid(a)
    bad = TwoTermComplex.build([4], [0], [[a.element(a.socle(4))]])
    assert not bad.is_valid(a)


def _center_agreement(complexes):
    for b in complexes:
        a = algebra_of(b)
        formula = center_formula(a.quiver)
        oracle = center_oracle(a)
        assert len(oracle) == formula.dim_Z, b
        assert all(is_central(a, z) for z in center_elements(a, formula)), b
        assert nilpotency_multiset(a, oracle) == sorted(b.mult.values()), b


def test_center_formula_matches_oracle_on_small_complexes():
    _center_agreement(enumerate_complexes(3, 2))


@pytest.mark.slow
def test_center_formula_matches_oracle_with_multiplicity_three():
    _center_agreement(enumerate_complexes(3, 3))


@pytest.mark.slow
def test_center_formula_matches_oracle_up_to_four_edges():
    _center_agreement(enumerate_complexes(4, 3, min_edges=4))
