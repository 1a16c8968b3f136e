from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_nx, to_nx
from homind.canon import canonical_form, canonical_graph, is_isomorphic
from homind.families import all_graphs, connected_graphs, trees_of_order
from homind.graph import (
    Graph,
    GraphError,
    clique_sum,
    complete,
    contract_edge,
    cycle,
    path,
    petersen,
    torso,
    wagner,
)
from homind.graph6 import Graph6Error, decode_graph6, encode_graph6, read_graph6_file
from homind.treewidth import exact_treewidth, treewidth


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_graph_rejects_loops_and_range():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_named_graphs():
    assert wagner().n == 8 and wagner().size == 12 and set(wagner().degrees()) == {3}
    assert petersen().size == 15
    assert nx.is_isomorphic(to_nx(wagner()), nx.circulant_graph(8, [1, 4]))


def test_contract_edge_drops_multi_edges():
    assert contract_edge(cycle(3), 0, 1) == Graph.from_edges(2, [(0, 1)])
    assert is_isomorphic(contract_edge(cycle(5), 0, 1), cycle(4))


def test_torso_adds_cliques_on_component_neighbourhoods():
    t = torso(cycle(6), [0, 2, 4])
    assert is_isomorphic(t, complete(3))
    assert torso(path(3), [0, 2]) == complete(2)


def test_clique_sum_and_drop():
    g = clique_sum(complete(3), complete(3), [0, 1], [0, 1], drop=[(0, 1)])
    assert is_isomorphic(g, cycle(4))
    with pytest.raises(GraphError):
        clique_sum(path(3), complete(3), [0, 2], [0, 1])
    with pytest.raises(GraphError):
        clique_sum(complete(3), complete(3), [0, 1], [0, 1], drop=[(0, 2)])


def test_clique_sum_round_trip_through_torsos():
    g = clique_sum(cycle(5).add_edges([(0, 2)]), complete(4), [0, 2], [1, 3])
    left = [v for v in range(g.n) if v < 5]
    right = [0, 2] + list(range(5, g.n))
    assert torso(g, left).size + torso(g, right).size - 1 == g.size
    assert is_isomorphic(torso(g, right), complete(4))
    assert g.has_edge(0, 2)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=70))
def test_graph6_matches_networkx(g):
    text = encode_graph6(g)
    assert nx.to_graph6_bytes(to_nx(g), header=False).decode().strip() == text
    assert decode_graph6(text) == g


def test_graph6_errors_and_files(tmp_path):
    with pytest.raises(Graph6Error):
        decode_graph6("A!")
    with pytest.raises(Graph6Error):
        decode_graph6("B")
    f = tmp_path / "g.g6"
    f.write_text(">>graph6<<A_\nBw\n\nC~\n")
    assert [g.size for _, g in read_graph6_file(f)] == [1, 3, 6]
    f.write_text("A_\nnot-graph6\n")
    with pytest.raises(Graph6Error, match=":2"):
        list(read_graph6_file(f))


def test_graph6_large_order():
    g = path(300)
    assert decode_graph6(encode_graph6(g)) == g


def test_enumeration_counts_match_oeis():
    # graphs, connected graphs and trees on n vertices
    assert [len(list(all_graphs(n, n))) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]
    assert [len(list(connected_graphs(n, n))) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]
    assert [len(trees_of_order(n)) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]


def test_canonical_form_agrees_with_networkx():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 9)
        g = from_nx(nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10**6)))
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))
        assert canonical_graph(g).n == n
        h = from_nx(nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10**6)))
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_forms_separate_all_six_vertex_graphs():
    six = list(all_graphs(6, 6))
    assert len({canonical_form(g) for g in six}) == 156


def _treewidth_brute(g: Graph) -> int:
    import itertools

    from homind.treewidth import elimination_width

    if g.n == 0:
        return -1
    return min(elimination_width(g, list(p)) for p in itertools.permutations(range(g.n)))


def test_treewidth_known_values():
    assert treewidth(Graph.empty(0)) == -1
    assert treewidth(Graph.empty(3)) == 0
    assert treewidth(path(6)) == 1
    assert treewidth(cycle(7)) == 2
    assert treewidth(complete(6)) == 5
    assert treewidth(petersen()) == 4
    assert treewidth(wagner()) == 4


def test_treewidth_matches_permutation_brute_force():
    for g in all_graphs(6, 1):
        w, d = exact_treewidth(g)
        assert w == _treewidth_brute(g)
        d.validate()
        assert d.width == w


def test_treewidth_matches_networkx_upper_bound():
    for g in all_graphs(6, 1):
        ub, _ = nx.algorithms.approximation.treewidth_min_fill_in(to_nx(g))
        assert treewidth(g) <= ub
