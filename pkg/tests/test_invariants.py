import pytest

from brauer_cli.invariants import compare, is_bipartite, signature, sphere_bipartite_check
from brauer_cli.orbit import enumerate_complexes
from brauer_cli.ribbon_core import BrauerComplex


def test_three_parallel_edges(load):
    sig = signature(load("e2"))
    assert (sig.n, sig.perimeters, sig.mults, sig.genus) == (3, (6,), (1, 1), 1)
    assert sig.bipartite is True
    assert sig.center_dim == 4


def test_loop_version_differs_only_in_bipartiteness(load):
    s2, s3 = signature(load("e2")), signature(load("e3"))
    assert s3.bipartite is False
    assert compare(s2, s3) == ["bipartite"]


def test_segment(load):
    sig = signature(load("e1"))
    assert (sig.n, sig.perimeters, sig.mults, sig.genus, sig.bipartite) == (1, (2,), (1, 1), 0, True)


def test_decagons_are_indistinguishable(load):
    s1, s2 = signature(load("e4_c1")), signature(load("e4_c2"))
    assert compare(s1, s2) == []
    assert (s1.n, s1.perimeters, s1.genus, s1.bipartite) == (5, (10,), 2, True)


def test_traceability_fields_are_not_compared(load):
    sig = signature(load("e2"))
    assert sig.euler_defect == 0
    assert (sig.vertices, sig.faces) == (2, 1)
    assert sig.key() == (3, (6,), (1, 1), 1, True, 4)


def test_multiplicities_show_up_in_signature(load):
    e2 = load("e2")
    heavy = BrauerComplex.from_vertex_mults(e2.complex, {0: 3})
    assert compare(signature(e2), signature(heavy)) == ["mults", "center_dim"]


def test_loops_are_never_bipartite(load):
    assert not is_bipartite(load("e6"))
    assert not is_bipartite(load("e6_extended"))
    assert is_bipartite(load("e5"))


def test_to_dict_lists(load):
    data = signature(load("e2")).to_dict()
    assert data["perimeters"] == [6]
    assert data["mults"] == [1, 1]


def test_sphere_bipartite_iff_even_faces():
    assert all(sphere_bipartite_check(b) for b in enumerate_complexes(4, genus=0))


@pytest.mark.slow
def test_sphere_bipartite_iff_even_faces_up_to_six_edges():
    assert all(sphere_bipartite_check(b) for b in enumerate_complexes(6, genus=0, min_edges=5))
