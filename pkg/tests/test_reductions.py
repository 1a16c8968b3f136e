from __future__ import annotations

import json

import pytest

from homind.classes import has_minor
from homind.families import connected_graphs, trees_of_order
from homind.graph import Graph, clique_sum, complete, cycle, path, star
from homind.homs import Homomorphism
from homind.oddo import iter_certificates, verify_oddomorphism
from homind.reductions import (
    ReductionError,
    cut_vertex_reduce,
    reduce_clique_sum,
    remove_isolated,
    remove_twins,
    separator_reduce,
    tree_topological_model,
)
from homind.suites import SuiteBounds, suite_cut_vertex, suite_separator


def cert_of(f: Graph, g: Graph, phi) -> object:
    ok, cert = verify_oddomorphism(Homomorphism(f, g, tuple(phi)))
    assert ok
    return cert


def test_remove_isolated():
    cert = cert_of(cycle(3) + Graph.empty(1), cycle(3), (0, 1, 2, 0))
    out = remove_isolated(cert, 3)
    assert out.phi.source == cycle(3) and out.phi.map == (0, 1, 2)
    with pytest.raises(ReductionError):
        remove_isolated(cert, 0)


def test_isolated_vertex_over_isolated_target_is_kept():
    cert = cert_of(Graph.empty(3), Graph.empty(1), (0, 0, 0))
    with pytest.raises(ReductionError):
        remove_isolated(cert, 0)


def test_remove_twins():
    cert = cert_of(star(3), complete(2), (0, 1, 1, 1))
    out = remove_twins(cert, 1, 2)
    assert out.phi.source == complete(2) and out.phi.map == (0, 1)
    with pytest.raises(ReductionError):
        remove_twins(cert, 0, 1)


def test_cut_vertex_on_two_triangles_over_a_triangle():
    # two triangles glued at vertex 0, both mapped identically onto a triangle
    f = clique_sum(cycle(3), cycle(3), [0], [0])
    g = complete(3)
    certs = list(iter_certificates(f, g))
    assert not certs  # vertex 0 sees two neighbours in each fibre
    bowtie_plus = clique_sum(f, cycle(3), [0], [0])
    cert = cert_of(bowtie_plus, g, (0, 1, 2, 1, 2, 1, 2))
    res = cut_vertex_reduce(cert, 0)
    assert res.vertices == (0, 1, 2) and res.cert.phi.map == (0, 1, 2)
    assert verify_oddomorphism(res.cert.phi)[0]


def test_cut_vertex_preconditions():
    cert = cert_of(path(3), path(3), (0, 1, 2))
    with pytest.raises(ReductionError):
        cut_vertex_reduce(cert, 0)  # not a cut vertex
    with pytest.raises(ReductionError):
        cut_vertex_reduce(cert, 1)  # the target minus vertex 1 is disconnected


def test_cut_vertex_sweep_small():
    report = suite_cut_vertex(SuiteBounds(sweep_source_n=5, sweep_target_n=3))
    assert report.passed, report.failures
    assert report.counts["instances"] > 100


def test_literal_separator_edge_rule_can_fail():
    # F = K1 + P3 with path 1-3-2, G = path 0-2-1, separator {0, 3}
    f = Graph.from_edges(4, [(1, 3), (2, 3)])
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    cert = cert_of(f, g, (0, 0, 1, 2))
    with pytest.raises(ReductionError):
        separator_reduce(cert, (0, 3), odd_edge_rule=True)
    res = separator_reduce(cert, (0, 3))
    assert verify_oddomorphism(res.cert.phi)[0]
    assert res.cert.phi.source.n < f.n
    assert has_minor(res.host, res.cert.phi.source)


def test_separator_instance_data():
    f = clique_sum(cycle(4), cycle(4), [0, 1], [0, 1], drop=[(0, 1)])
    g = cycle(4)
    certs = [c for c in iter_certificates(f, g)]
    assert certs
    for cert in certs:
        try:
            res = separator_reduce(cert, (0, 1))
        except ReductionError:
            continue
        inst = res.instance
        data = json.loads(inst.to_json())
        n = len(inst.components)
        assert len(data["P"]) == len(inst.target_components)
        assert inst.parity.apply((1 << n) - 1) == (1 << inst.parity.nrows) - 1
        assert 0 < len(inst.chosen) < n
        assert verify_oddomorphism(res.cert.phi)[0]


def test_separator_needs_more_source_components():
    cert = cert_of(cycle(4), cycle(4), (0, 1, 2, 3))
    with pytest.raises(ReductionError):
        separator_reduce(cert, (0, 2))


def test_separator_sweep_small():
    report = suite_separator(SuiteBounds(sweep_source_n=5, sweep_target_n=3))
    assert report.passed, report.failures
    assert report.counts["instances"] > 100


def test_clique_sum_reduction_without_separators_is_identity():
    cert = cert_of(complete(4), complete(4), (0, 1, 2, 3))
    out = reduce_clique_sum(cert, 2)
    assert out.rounds == () and out.cert.phi.map == (0, 1, 2, 3)


def test_clique_sum_reduction_sweep():
    for s, g in ((1, complete(3)), (1, cycle(4)), (2, complete(4))):
        for f in connected_graphs(6, 4):
            for cert in iter_certificates(f, g):
                out = reduce_clique_sum(cert, s)
                sizes = [f.n] + [n for _, _, n in out.rounds]
                assert all(a > b for a, b in zip(sizes, sizes[1:]))
                assert verify_oddomorphism(out.cert.phi)[0]
                src = out.cert.phi.source
                assert all(len(src.component_masks(src.full_mask & ~(1 << v))) <= 1 for v in src.vertices())


def test_clique_sum_reduction_needs_connected_target():
    cert = cert_of(path(3), path(3), (0, 1, 2))
    with pytest.raises(ReductionError):
        reduce_clique_sum(cert, 1)


def test_tree_models_on_identity():
    for g in (path(5), star(3)):
        model = tree_topological_model(cert_of(g, g, range(g.n)))
        assert model.rho == tuple(range(g.n))
        assert all(len(p) == 2 for p in model.paths.values())
        model.verify()


def test_tree_models_on_subdivided_trees():
    for n in range(5, 8):
        for f in trees_of_order(n):
            for cert in iter_certificates(f, star(3)):
                model = tree_topological_model(cert)
                model.verify()
                assert all(cert.phi.map[model.rho[v]] == v for v in range(4))


def test_tree_models_reject_non_trees():
    with pytest.raises(ReductionError):
        tree_topological_model(cert_of(cycle(3), cycle(3), (0, 1, 2)))
