import pytest

from brauer_cli.config import Config
from brauer_cli.errors import EdgeError, SizeLimitError
from brauer_cli.invariants import signature
from brauer_cli.orbit import (
    CENSUS_FIELDS,
    census,
    enumerate_complexes,
    enumerate_maps,
    explore,
    random_census,
    with_multiplicities,
)
from brauer_cli.ribbon_core import RibbonComplex


def test_decagon_orbit_is_a_single_class(load):
    report = explore(load("e4_c1"))
    assert report.size == 1
    assert report.frontier_exhausted and not report.budget_exhausted
    assert report.symmetric
    assert not report.contains(load("e4_c2"))
    assert report.fixed_moves == 5


def test_star_orbit(load):
    report = explore(load("e5"))
    assert report.size == 2
    assert report.symmetric
    assert report.signatures_agree()
    assert report.move_counts["leaf_shift"] > 0
    assert report.contains(load("e5"))


def test_orbit_budget_is_flagged(load):
    report = explore(load("e5"), max_size=1)
    assert report.size == 1
    assert report.budget_exhausted
    assert not report.frontier_exhausted
    assert not report.symmetric
    data = report.to_dict()
    assert data["budget_exhausted"] is True and data["size"] == 1


def test_single_edge_has_no_orbit(load):
    with pytest.raises(EdgeError) as info:
        explore(load("e1"))
    assert info.value.code == "single-edge-complex"


def test_orbit_signatures_agree(load):
    for name in ("e2", "e3", "e6_extended", "star_b"):
        assert explore(load(name)).signatures_agree()


def test_map_counts():
    maps = enumerate_maps(2)
    assert len(maps[1]) == 2
    assert len(maps[2]) == 5
    assert sum(1 for c in maps[2] if c.genus() == 0) == 4


def test_multiplicity_assignments_up_to_symmetry():
    segment = RibbonComplex((1, 0), (0, 1))
    assert len(with_multiplicities(segment, 2)) == 3
    assert len(with_multiplicities(segment, 1)) == 1


def test_enumerate_complexes_filters():
    assert len(enumerate_complexes(2)) == 7
    assert len(enumerate_complexes(2, min_edges=2)) == 5
    assert all(b.genus() == 0 for b in enumerate_complexes(3, genus=0))


def test_census_accounts_for_every_class():
    seen = []
    rows = census(2, progress=lambda done, total: seen.append((done, total)))
    assert sum(r.classes for r in rows) == len(enumerate_complexes(2))
    assert seen[-1][0] == seen[-1][1] == len(rows)


def test_genus0_signatures_pin_down_one_orbit():
    rows = census(3, 2, genus=0)
    assert rows
    assert all(r.separated and r.symmetric for r in rows)


@pytest.mark.slow
@pytest.mark.parametrize("edges, mult", [(5, 2), (6, 1)])
def test_genus0_signatures_pin_down_one_orbit_on_larger_maps(edges, mult):
    rows = census(edges, mult, genus=0)
    assert rows
    assert all(r.separated and r.symmetric for r in rows)


def test_census_keeps_loop_version_apart(load):
    rows = census(3)
    with_e2 = [r for r in rows if r.signature == signature(load("e2"))]
    with_e3 = [r for r in rows if r.signature == signature(load("e3"))]
    assert len(with_e2) == len(with_e3) == 1
    assert with_e2[0] is not with_e3[0]


def test_census_row_fields():
    row = census(2)[0]
    assert list(row.to_row()) == CENSUS_FIELDS
    assert set(row.to_dict()) == {"signature", "classes", "orbits", "separated", "symmetric"}


def test_census_size_limit():
    with pytest.raises(SizeLimitError):
        census(3, config=Config(CENSUS_MAX_EDGES=2))


def test_random_orbits_keep_signatures(rng):
    results = random_census(rng, 5, 3, max_mult=2)
    assert len(results) == 5
    assert all(r["signatures_agree"] for r in results)
