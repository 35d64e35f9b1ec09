import random

import networkx as nx
import pytest

from brauer_cli.errors import (
    EdgeError,
    HasLeavesError,
    InfeasibleTargetError,
    NonzeroGenusError,
    WrongTypeError,
)
from brauer_cli.genus0 import (
    DoublePerimeters,
    balancing_steps,
    canonical_target,
    canonicalize_type1,
    decide_equivalent,
    double_perimeters,
    dual_tree,
    equalize_double_perimeters,
    flip,
    flip_over,
    loop_graph,
    reduce,
    reduced_type2_hub,
    tree_from_rotations,
    witness_to_canonical,
)
from brauer_cli.invariants import signature
from brauer_cli.orbit import enumerate_complexes
from brauer_cli.ribbon_core import BrauerComplex, canonical_form, from_rotations
from brauer_cli.tilting import replay


def digest(b):
    return canonical_form(b).digest


def _meets_hub(b, hub):
    c = b.complex
    return all(hub in (c.vertex_of(e), c.vertex_of(c.alpha[e])) for e in c.edges())


@pytest.mark.parametrize("perimeters, mults", [
    ([2], [1, 1]),
    ([2, 2], [1, 1]),
    ([2, 4], [2, 1, 1]),
    ([4, 6, 2], [3, 1, 1, 2, 1]),
    ([1, 3], [1, 1]),
    ([3, 3], [2, 1, 1]),
    ([1, 1, 3, 5], [1, 1, 1]),
    ([3, 5], [1, 2, 1, 1]),
])
def test_canonical_target_realizes_its_class(perimeters, mults):
    sig = signature(canonical_target(perimeters, mults))
    assert sig.genus == 0
    assert sig.perimeters == tuple(sorted(perimeters))
    assert sig.mults == tuple(sorted(mults))


def test_canonical_target_type_follows_parity():
    assert reduced_type2_hub(canonical_target([2, 4], [1, 1, 1])) is None
    assert reduced_type2_hub(canonical_target([1, 3], [1, 1])) is not None


def test_canonical_target_ignores_input_order():
    assert digest(canonical_target([5, 1, 3, 1], [1, 1, 1])) == digest(canonical_target([1, 1, 3, 5], [1, 1, 1]))


@pytest.mark.parametrize("perimeters, mults", [
    ([3], [1]),
    ([2, 2], [1]),
    ([], [1]),
    ([2, 2], [1, 0]),
])
def test_infeasible_classes(perimeters, mults):
    with pytest.raises(InfeasibleTargetError):
        canonical_target(perimeters, mults)


def test_reduced_path_needs_no_moves(path3):
    r = reduce(path3)
    assert r.type == 1
    assert len(r.log) == 0
    assert r.hub == 1


def test_reduce_path_from_an_end(path3):
    r = reduce(path3, hub=0)
    assert r.type == 1
    assert [m.edge for m in r.log.moves] == [2]
    assert _meets_hub(r.complex, r.hub)
    assert digest(replay(path3, r.log)) == r.log.final


def test_star_is_reduced(load):
    r = reduce(load("e5"))
    assert (r.type, len(r.log)) == (1, 0)


def test_loop_with_leaf_is_type_two(load):
    r = reduce(load("e6_extended"))
    assert r.type == 2
    assert reduced_type2_hub(r.complex) == r.hub


def test_reduce_random_genus0_complexes():
    for b in enumerate_complexes(4, genus=0, min_edges=2):
        r = reduce(b)
        assert _meets_hub(r.complex, r.hub)
        assert signature(r.complex) == signature(b)
        if r.type == 2:
            assert reduced_type2_hub(r.complex) is not None


def test_reduce_errors(load):
    with pytest.raises(NonzeroGenusError):
        reduce(load("e2"))
    with pytest.raises(EdgeError):
        reduce(load("e1"))


def test_dual_tree_of_two_loops(rose2):
    tree = dual_tree(rose2)
    assert tree.is_tree()
    assert sorted(tree.degrees().values()) == [1, 1, 2]
    assert digest(loop_graph(tree)) == digest(rose2)


def test_loop_graph_of_a_star_tree():
    tree = tree_from_rotations([[1, 2, 3], [0], [0], [0]], hub_mult=2)
    graph = loop_graph(tree)
    assert graph.vertices() == [0]
    assert graph.edge_count == 3
    assert sorted(f.perimeter for f in graph.faces()) == [1, 1, 1, 3]
    assert graph.mult_of(0) == 2
    assert sorted(dual_tree(graph).degrees().values()) == [1, 1, 1, 3]


def test_dual_tree_errors(load):
    with pytest.raises(HasLeavesError):
        dual_tree(load("e5"))
    with pytest.raises(WrongTypeError):
        dual_tree(from_rotations([["a", "b"], ["b", "a"]]))
    with pytest.raises(NonzeroGenusError):
        dual_tree(load("e2"))


def test_flip_and_flip_over():
    rose = from_rotations([["b", "b", "a", "c", "c", "a"]])
    tree = dual_tree(rose)
    flipped = flip(tree, 2)
    assert flipped.is_tree() and len(flipped.nodes()) == 4
    turned = flip_over(tree, 0)
    assert turned.is_tree() and len(turned.nodes()) == 4
    with pytest.raises(WrongTypeError):
        flip_over(tree, 2)
    with pytest.raises(WrongTypeError):
        flip(tree, 0)


def test_double_perimeters(load):
    assert double_perimeters(load("e6_extended")) == DoublePerimeters.of([(1, 1), (3, 1)])
    start = canonical_target([1, 1, 3, 5], [1, 1, 1])
    assert double_perimeters(start).to_list() == [[1, 1], [1, 1], [3, 1], [5, 3]]


def test_balancing_steps_move_two_at_a_time():
    current = DoublePerimeters.of([(1, 1), (1, 1), (3, 1), (5, 3)])
    target = DoublePerimeters.of([(1, 1), (1, 1), (3, 3), (5, 1)])
    assert balancing_steps(current, target) == [target]
    assert balancing_steps(current, current) == []


def test_balancing_steps_refuse_to_empty_a_face():
    current = DoublePerimeters.of([(3, 2), (5, 0)])
    target = DoublePerimeters.of([(3, 1), (5, 1)])
    with pytest.raises(InfeasibleTargetError):
        balancing_steps(current, target)


def test_equalize_double_perimeters():
    start = canonical_target([1, 1, 3, 5], [1, 1, 1])
    target = DoublePerimeters.of([(1, 1), (1, 1), (3, 3), (5, 1)])
    end, log = equalize_double_perimeters(start, target)
    assert double_perimeters(end) == target
    assert reduced_type2_hub(end) is not None
    assert digest(replay(start, log)) == digest(end)


@pytest.mark.parametrize("pairs", [
    [(3, 2), (5, 2)],
    [(3, 1), (5, 3)],
    [(3, 1), (7, 1)],
    [(3, 5), (5, 1)],
])
def test_infeasible_double_perimeters(pairs):
    start = canonical_target([3, 5], [1, 1, 1, 1])
    with pytest.raises(InfeasibleTargetError):
        equalize_double_perimeters(start, DoublePerimeters.of(pairs))


def test_stars_are_equivalent_with_witnesses(load):
    a, b = load("star_a"), load("star_b")
    verdict = decide_equivalent(a, b, witness=True)
    assert verdict.equivalent
    assert digest(replay(a, verdict.first)) == verdict.target
    assert digest(replay(b, verdict.second)) == verdict.target
    assert verdict.to_dict()["witness"]["target"] == verdict.target


def test_multiplicities_separate(load):
    verdict = decide_equivalent(load("e5"), load("star_a"))
    assert not verdict.equivalent
    assert verdict.distinguished_by == ["mults"]
    assert verdict.to_dict() == {"equivalent": False, "distinguished_by": ["mults"]}


def test_perimeters_separate(load, path3):
    assert decide_equivalent(load("e5"), path3).distinguished_by == ["perimeters", "mults"]


def test_decide_rejects_higher_genus(load):
    with pytest.raises(NonzeroGenusError):
        decide_equivalent(load("e2"), load("e2"))


def test_canonicalize_type1_rejects_loops(load):
    with pytest.raises(WrongTypeError):
        canonicalize_type1(reduce(load("e6_extended")))


def test_single_edge_witness_is_empty(load):
    end, log = witness_to_canonical(load("e1"))
    assert len(log) == 0
    assert digest(end) == digest(canonical_target([2], [1, 1]))


def _check_witnesses(complexes):
    for b in complexes:
        end, log = witness_to_canonical(b)
        perimeters = [f.perimeter for f in b.faces()]
        assert digest(end) == digest(canonical_target(perimeters, list(b.mult.values())))
        assert digest(replay(b, log)) == digest(end)


def test_witnesses_for_small_complexes():
    _check_witnesses(enumerate_complexes(3, 2, genus=0))


@pytest.mark.slow
def test_witnesses_up_to_five_edges():
    _check_witnesses(enumerate_complexes(5, 2, genus=0))


def _labelled_tree(seed, nodes=11, labelled=4):
    rng = random.Random(seed)
    tree = nx.from_prufer_sequence([rng.randrange(nodes) for _ in range(nodes - 2)])
    plane = tree_from_rotations([sorted(tree.neighbors(v)) for v in range(nodes)]).tree
    return BrauerComplex.from_vertex_mults(plane, {v: 2 for v in rng.sample(plane.vertices(), labelled)})


@pytest.mark.parametrize("seed", range(3))
def test_witnesses_for_ten_edge_trees(seed):
    _check_witnesses([_labelled_tree(seed)])


def test_ten_edge_trees_meet_at_one_form():
    a, b = _labelled_tree(0), _labelled_tree(1)
    verdict = decide_equivalent(a, b, witness=True)
    assert verdict.equivalent
    assert digest(replay(a, verdict.first)) == digest(replay(b, verdict.second)) == verdict.target
