from __future__ import annotations

import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx
from homind.canon import is_isomorphic
from homind.cfi import build_cfi_pair, cfi_counts, cfi_distinguishes, cfi_size
from homind.graph import Graph, GraphError, complete, cycle, path
from homind.oddo import search_oddomorphism


def cfi_reference(base: Graph, twisted: set[int]) -> nx.Graph:
    """The CFI graph straight from its definition, with networkx."""
    h = nx.Graph()
    for v in base.vertices():
        inc = [tuple(sorted((v, w))) for w in base.neighbors(v)]
        want = 1 if v in twisted else 0
        for k in range(len(inc) + 1):
            for s in itertools.combinations(inc, k):
                if k % 2 == want:
                    h.add_node((v, frozenset(s)))
    for a, b in itertools.combinations(list(h.nodes()), 2):
        (v, s), (w, t) = a, b
        e = tuple(sorted((v, w)))
        if base.has_edge(v, w) and ((e in s) == (e in t)):
            h.add_edge(a, b)
    return h


@pytest.mark.parametrize("base", [complete(2), cycle(3), path(3), complete(4), cycle(5)])
def test_pair_matches_reference_construction(base):
    pair = build_cfi_pair(base)
    assert nx.is_isomorphic(to_nx(pair.even), cfi_reference(base, set()))
    assert nx.is_isomorphic(to_nx(pair.odd), cfi_reference(base, {0}))
    assert pair.even.n == pair.odd.n == cfi_size(base)


def test_triangle_pair():
    pair = build_cfi_pair(cycle(3))
    assert is_isomorphic(pair.even, cycle(3) + cycle(3))
    assert is_isomorphic(pair.odd, cycle(6))


def test_edge_pair():
    pair = build_cfi_pair(complete(2))
    assert is_isomorphic(pair.even, complete(2))
    assert is_isomorphic(pair.odd, Graph.empty(2))


def test_k4_pair():
    pair = build_cfi_pair(complete(4))
    assert pair.even.n == 16 and set(pair.even.degrees()) == {6}
    assert not is_isomorphic(pair.even, pair.odd, max_order=16)
    for t in range(1, 4):
        assert is_isomorphic(build_cfi_pair(complete(4), twist=t).odd, pair.odd, max_order=16)


def test_distinguishing_patterns():
    pair = build_cfi_pair(cycle(3))
    assert cfi_counts(cycle(3), pair) == (12, 0)
    assert cfi_counts(cycle(6), pair) == (132, 132)
    assert not cfi_distinguishes(path(4), pair)
    assert not cfi_distinguishes(complete(1), pair)


def test_gadget_sidecar_describes_every_vertex():
    pair = build_cfi_pair(complete(3))
    data = json.loads(pair.sidecar())
    assert data["twist"] == 0
    assert len(data["even"]) == pair.even.n and len(data["odd"]) == pair.odd.n
    odd_sizes = [len(x["edges"]) % 2 for x in data["odd"] if x["base_vertex"] == 0]
    assert odd_sizes and all(s == 1 for s in odd_sizes)


def test_rejects_bad_bases():
    with pytest.raises(GraphError):
        build_cfi_pair(Graph.empty(2))
    with pytest.raises(GraphError):
        build_cfi_pair(complete(12), max_vertices=100)
    with pytest.raises(GraphError):
        build_cfi_pair(cycle(3), twist=3)


_BASES = {"C4": cycle(4), "P3": path(3), "diamond": complete(4).delete_edges([(2, 3)]), "C5": cycle(5)}
_PAIRS = {name: build_cfi_pair(b) for name, b in _BASES.items()}


@st.composite
def connected_patterns(draw):
    n = draw(st.integers(1, 6))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges += draw(st.lists(st.sampled_from(extra), unique=True, max_size=6)) if extra else []
    return Graph.from_edges(n, edges)


@settings(max_examples=120, deadline=None)
@given(connected_patterns(), st.sampled_from(sorted(_BASES)))
def test_cfi_distinguishes_iff_weak_oddomorphism(f, name):
    weak = search_oddomorphism(f, _BASES[name], weak=True) is not None
    assert cfi_distinguishes(f, _PAIRS[name]) == weak
