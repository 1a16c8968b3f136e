from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest

from conftest import to_nx
from homind.canon import canonical_form
from homind.classes import (
    SearchBudgetExceeded,
    build_witness,
    class_member,
    deletion_distance,
    elimination_distance,
    embeds,
    has_minor,
    has_topological_minor,
    in_clique_sum_closure,
    in_d3_star,
    in_p_k,
    is_k2h_free,
    is_planar,
    predicate,
)
from homind.families import all_graphs
from homind.graph import Graph, complete, complete_bipartite, cycle, path, petersen, star, wagner
from homind.suites import minors_up_to_isomorphism
from homind.treewidth import treewidth

SMALL = list(all_graphs(6, 1))


def _key(g: Graph) -> bytes:
    return canonical_form(g, max_order=12)


def test_minor_basics():
    assert has_minor(complete(4), complete(3))
    assert not has_minor(complete(4), complete(5))
    assert has_minor(petersen(), complete(5))
    assert has_minor(petersen(), complete_bipartite(3, 3))
    assert has_minor(wagner(), complete_bipartite(3, 3))
    assert not has_minor(wagner(), complete(5))


def test_minor_matches_closure_of_one_step_operations():
    hosts = [g for g in all_graphs(6, 2) if g.size <= 9]
    patterns = list(all_graphs(4, 1))
    for g in hosts[::3]:
        closure = {_key(m) for m in minors_up_to_isomorphism(g)}
        for m in patterns:
            assert has_minor(g, m) == (_key(m) in closure), (g, m)


def test_k4_minor_free_means_treewidth_at_most_two():
    for g in all_graphs(7, 4):
        assert has_minor(g, complete(4)) == (treewidth(g) >= 3)


def test_k3_minor_means_a_cycle():
    for g in SMALL:
        assert has_minor(g, complete(3)) == (not g.is_forest())


def test_embeds_is_subgraph_containment():
    for g in list(all_graphs(5, 5)):
        for m in all_graphs(4, 4):
            gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(m))
            assert embeds(m, g) == gm.subgraph_is_monomorphic()


def test_topological_minors():
    assert has_topological_minor(complete(5), complete(5))
    assert has_topological_minor(complete_bipartite(3, 3), complete(4))
    assert not has_topological_minor(petersen(), complete(5))
    # with maximum degree 3, minors and topological minors of K4 coincide
    for g in all_graphs(7, 4):
        if g.max_degree() <= 3:
            assert has_topological_minor(g, complete(4)) == has_minor(g, complete(4))


def test_minor_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded):
        host = petersen() + complete(1)
        has_minor(host.add_edges([(0, 10)]), complete(4) + complete(1), budget=1)


def test_planarity_matches_networkx():
    for g in all_graphs(7, 5):
        assert is_planar(g) == nx.check_planarity(to_nx(g))[0]
    assert not is_planar(complete(5)) and is_planar(complete(4))
    assert not is_planar(petersen())


def test_p_k():
    assert in_p_k(complete(5), 2)
    assert not in_p_k(complete(5) + complete(5), 2)
    assert not in_p_k(complete(5) + complete_bipartite(3, 3), 2)
    assert not in_p_k(complete(5), 1)


def test_k2h_free():
    assert is_k2h_free(cycle(6), 3)
    assert not is_k2h_free(complete(4), 3)
    assert not is_k2h_free(complete_bipartite(2, 3), 3)
    assert is_k2h_free(complete_bipartite(2, 3), 4)


def test_d3_star():
    assert in_d3_star(complete(4))
    assert not in_d3_star(complete(5))
    assert in_d3_star(wagner())
    members = [g for g in all_graphs(6, 5) if in_d3_star(g)]
    assert len(members) > 20
    assert all(not has_topological_minor(g, complete(5)) for g in members)


def test_predicate_lookup():
    assert class_member(cycle(4), "tw_le:2")
    assert not class_member(complete(4), "tw_le:2")
    assert predicate("maxdeg:3").key == "maxdeg:3"
    assert class_member(star(3), "forests") and not class_member(star(3), "edgeless")
    with pytest.raises(ValueError):
        predicate("nope")
    with pytest.raises(ValueError):
        predicate("maxdeg")


def _vertex_cover_number(g: Graph) -> int:
    return g.n - max(len(c) for c in nx.find_cliques(nx.complement(to_nx(g)))) if g.n else 0


def _feedback_vertex_number(g: Graph) -> int:
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if nx.is_forest(to_nx(g.delete_vertices(s))) if g.n > k else True:
                return k
    return g.n


def test_deletion_distance():
    assert deletion_distance(complete(5), "planar") == 1
    assert deletion_distance(complete(3), "edgeless") == 2
    for g in SMALL[::2]:
        assert deletion_distance(g, "edgeless") == _vertex_cover_number(g)
        assert deletion_distance(g, "forests") == _feedback_vertex_number(g)


def test_elimination_distance():
    assert elimination_distance(complete(5), "empty") == 5
    assert elimination_distance(path(4), "empty") == 3
    for n in range(1, 12):
        # treedepth of a path
        assert elimination_distance(path(n), "empty") == math.ceil(math.log2(n + 1))
    for g in SMALL:
        assert elimination_distance(g, "edgeless") == max(elimination_distance(g, "empty") - 1, 0)
        assert elimination_distance(g, "edgeless") <= deletion_distance(g, "edgeless")
    assert elimination_distance(cycle(5), "planar") == 0


def test_one_sums_of_edges_are_forests():
    memo: dict = {}
    for g in all_graphs(7, 1):
        assert in_clique_sum_closure(g, lambda h: h.n <= 2, 1, memo) == g.is_forest()


def test_two_sums_of_triangles_give_treewidth_two():
    memo: dict = {}
    for g in all_graphs(7, 1):
        assert in_clique_sum_closure(g, lambda h: h.n <= 3, 2, memo) == (treewidth(g) <= 2)


def test_witnesses():
    g = build_witness("genus", 0)
    assert (g.n, g.size) == (6, 11)
    assert nx.is_isomorphic(to_nx(build_witness("hadwiger", 0)), to_nx(complete(6)))
    h = build_witness("hadwiger", 1)
    assert h.is_k_connected(2) and h.n == 17
    with pytest.raises(ValueError):
        build_witness("other", 1)
