"""Component partitions, theorem verification, bridges and orbits."""

import pytest

from prym4.components import (EXC1, EXC2, S1_COMPONENT_TABLE,
                              S2_COMPONENT_TABLE, bridge_1mod8, bridge_even,
                              component_partition, orbit_count, orbit_graph,
                              square_tiled_orbits, verify_pd_theorem,
                              verify_sd_theorem)
from prym4.exact import discriminants
from prym4.moves import butterfly, butterfly_qs
from prym4.prototype import enumerate_prototypes, invariant_class


def comp_sets(D, level):
    return sorted(component_partition(D, level).components(), key=sorted)


def test_d36_partition():
    comps = component_partition(36, "pa").components()
    assert sorted(sorted(p.quad for p in c) for c in comps) == \
        [[(5, 1, 0, -4), (9, 1, 0, 0)], [(8, 1, 0, -2)]]


def test_s1_exceptional_tables():
    for D in (52, 68, 73, 84, 88):
        assert comp_sets(D, "s1") == \
            sorted(S1_COMPONENT_TABLE[D], key=sorted)


def test_s2_exceptional_tables():
    for D in (113, 217, 265, 385, 481, 513):
        assert comp_sets(D, "s2") == \
            sorted(S2_COMPONENT_TABLE[D], key=sorted)
    assert comp_sets(49, "s2") == []


def test_verify_theorems_small_range():
    for D in discriminants(4, 300):
        assert verify_pd_theorem(D)["match"], D
        if D >= 12:
            assert verify_sd_theorem(D, 1)["match"], D
            assert verify_sd_theorem(D, 2)["match"], D


def test_union_find_equals_bfs_closure():
    for D in discriminants(4, 120):
        part = component_partition(D, "pa")
        adj = {p: set() for p in part.universe}
        for p in part.universe:
            for q in butterfly_qs(p):
                img = butterfly(p, q)
                adj[p].add(img)
                adj[img].add(p)
        for start in part.universe:
            seen, todo = {start}, [start]
            while todo:
                p = todo.pop()
                for img in adj[p]:
                    if img not in seen:
                        seen.add(img)
                        todo.append(img)
            comp = next(c for c in part.components() if start in c)
            assert seen == comp


def test_bridge_even_non_square():
    for D in (20, 24, 32, 40, 56, 60):
        bridges = bridge_even(D)
        assert bridges, D
        for br in bridges:
            assert {p.e % 4 for p in br.prototypes} == {0, 2}, (D, br)
    assert bridge_even(8) == []
    with pytest.raises(ValueError):
        bridge_even(13)


def test_bridge_even_chained_cases():
    for D in (52, 68, 84):
        part = component_partition(D, "pa")
        graph = orbit_graph(D)
        assert graph.orbit_count() == 1


def test_bridge_even_squares():
    for D in (36, 100, 144, 196, 256, 324):
        assert orbit_graph(D).orbit_count() == 1


def test_bridge_1mod8():
    for D in (17, 33, 41, 65, 73, 105, 113, 145, 481):
        if component_partition(D, "pa").n_components > 1:
            assert orbit_graph(D).orbit_count() == 1
    with pytest.raises(ValueError):
        bridge_1mod8(12)
    # the direct simple-cylinder search works above the window bound
    recs = bridge_1mod8(617)
    assert recs and recs[0].kind == "simple-cylinder-search"
    src, tgt = recs[0].prototypes
    assert invariant_class(src) == "A2" and invariant_class(tgt) == "A1"


def test_orbit_counts():
    assert orbit_count(4) == 0
    assert orbit_count(9) == 0
    for D in (5, 8, 13, 16, 17, 25, 36, 41, 52, 100):
        assert orbit_count(D) == 1, D


def test_square_tiled_orbits():
    assert square_tiled_orbits(7) == 0
    assert square_tiled_orbits(6) == 0
    assert square_tiled_orbits(8) == 1
    assert square_tiled_orbits(12) == 1


def test_exceptional_sets_are_disjoint():
    assert not (EXC1 & EXC2)
    assert all(D % 8 == 1 for D in EXC2)


def test_partition_exports():
    part = component_partition(41, "s1")
    data = part.as_json()
    assert data["n_components"] == 2
    assert sorted(map(sorted, data["components"])) == \
        [[-5, 1], [-3, -1]]
    dot = part.to_dot()
    assert dot.startswith("graph") and '"[-5]" ' in dot or "[-5]" in dot
    og = orbit_graph(41)
    assert og.as_json()["orbits"] == 1
    assert "orbits_41" in og.to_dot()