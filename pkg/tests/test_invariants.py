"""Structural invariants checked on small exhaustive or seeded families."""

from __future__ import annotations

import random
from itertools import combinations, permutations

import networkx as nx
from conftest import to_nx
from homind.bilabelled import enumerate_series_parallel, hom_matrix, minus_edge, parallel, series, soe_graph
from homind.canon import canonical_form
from homind.cfi import build_cfi_pair, cfi_size
from homind.classes import has_minor, in_d3_star, in_p_k
from homind.families import all_graphs, connected_graphs
from homind.graph import (
    Graph,
    clique_sum,
    complete,
    complete_bipartite,
    cycle,
    petersen,
    torso,
    wagner,
)
from homind.homs import count_homs
from homind.oddo import iter_certificates, search_oddomorphism
from homind.treewidth import elimination_width, exact_treewidth, find_noncut_low_degree_vertex, prune_decomposition, treewidth


def _random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# series-parallel algebra ---------------------------------------------------------


def test_hom_matrices_are_functorial():
    rng = random.Random(5)
    terms = enumerate_series_parallel(3)
    targets = [_random_graph(rng, rng.randint(1, 5)) for _ in range(30)]
    for g in targets:
        mats = {t.expr: hom_matrix(t.realization, g) for t in terms}
        for s, t in combinations(terms, 2):
            a, b = mats[s.expr], mats[t.expr]
            assert (hom_matrix(parallel(s.realization, t.realization), g) == a * b).all()
            assert (hom_matrix(series(s.realization, t.realization), g) == a @ b).all()
        for t in terms:
            assert int(mats[t.expr].sum()) == count_homs(soe_graph(t.realization), g)


def test_series_parallel_terms_have_treewidth_two_with_labels_together():
    for t in enumerate_series_parallel(6):
        s = t.realization
        assert treewidth(s.graph) <= 2
        # adding the label edge keeps width 2 iff some optimal bag holds both labels
        assert treewidth(s.graph.add_edges([(s.u, s.v)])) <= 2


def test_d3_star_is_closed_under_gluing_series_parallel_terms():
    terms = enumerate_series_parallel(3)
    hosts = [g for g in all_graphs(5, 3) if g.size and in_d3_star(g)]
    checked = 0
    for f in hosts[::4]:
        for e in f.edges()[:2]:
            fm = minus_edge(f, *e)
            for t in terms:
                glued = soe_graph(parallel(fm, t.realization))
                assert in_d3_star(glued), (f, e, t.expr)
                checked += 1
    assert checked > 50


# graph core -----------------------------------------------------------------------


def test_treewidth_matches_ordering_brute_force_on_larger_samples():
    rng = random.Random(8)
    for _ in range(12):
        n = rng.choice([7, 8])
        g = _random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        brute = min(elimination_width(g, list(p)) for p in permutations(range(n)))
        assert treewidth(g) == brute


def test_noncut_low_degree_vertex_exists_below_treewidth():
    for g in connected_graphs(7, 2):
        k = treewidth(g)
        v = find_noncut_low_degree_vertex(g, k)
        assert g.degree(v) <= k and g.delete_vertices([v]).is_connected()


def test_torsos_of_bags_reassemble_the_graph():
    rng = random.Random(4)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(3, 9), 0.35)
        _, d = exact_treewidth(g)
        d = prune_decomposition(d)
        bags = d.bag_lists()
        adh = [set(bags[s]) & set(bags[t]) for s, t in d.tree.edges()]

        def closed_torso(i: int) -> Graph:
            t = torso(g, bags[i])
            extra = []
            for s in adh:
                if s <= set(bags[i]):
                    extra += [(bags[i].index(a), bags[i].index(b)) for a, b in combinations(sorted(s), 2)]
            return t.add_edges(extra)

        h, labels = closed_torso(0), list(bags[0])
        seen, order = {0}, [0]
        while order:
            p = order.pop(0)
            for c in d.tree.neighbors(p):
                if c in seen:
                    continue
                seen.add(c)
                order.append(c)
                s = sorted(set(bags[p]) & set(bags[c]))
                h = clique_sum(h, closed_torso(c), [labels.index(v) for v in s], [bags[c].index(v) for v in s])
                labels += [v for v in bags[c] if v not in s]
        assert sorted(labels) == list(range(g.n))
        got = {tuple(sorted((labels[a], labels[b]))) for a, b in h.edges()}
        want = set(g.edges())
        assert want <= got
        assert all(any({a, b} <= s for s in adh) for a, b in got - want)


def test_canonical_form_sentinels():
    assert canonical_form(Graph.empty(1)) == canonical_form(Graph.empty(1))
    assert canonical_form(cycle(3) + cycle(3)) != canonical_form(cycle(6))
    perm = [3, 7, 1, 0, 9, 2, 5, 8, 6, 4]
    assert canonical_form(petersen().relabel(perm)) == canonical_form(petersen())


# CFI ------------------------------------------------------------------------------


def test_cfi_pairs_are_never_isomorphic():
    # the identity is an oddomorphism, so the base itself tells the pair apart;
    # with single-vertex gadgets at leaves this includes trees
    for base in connected_graphs(6, 2):
        if cfi_size(base) > 24:
            continue
        pair = build_cfi_pair(base)
        assert count_homs(base, pair.even, bigint=True) != count_homs(base, pair.odd, bigint=True)


def test_twist_location_does_not_matter():
    for base in connected_graphs(5, 3):
        ref = to_nx(build_cfi_pair(base).odd)
        for t in range(1, base.n):
            assert nx.is_isomorphic(ref, to_nx(build_cfi_pair(base, twist=t).odd))


# oddomorphisms and classes ----------------------------------------------------------


def test_verified_oddomorphisms_are_surjective():
    for f in all_graphs(5, 1):
        for g in all_graphs(3, 1):
            for cert in iter_certificates(f, g):
                assert cert.phi.is_surjective()


def test_weak_and_plain_reachability_agree_on_subgraph_closed_families():
    family = list(all_graphs(5, 1))
    for g in all_graphs(4, 1):
        weak = any(search_oddomorphism(f, g, weak=True) is not None for f in family)
        plain = any(search_oddomorphism(f, g) is not None for f in family)
        assert weak == plain


def test_two_kuratowski_free_class_is_closed_under_oddomorphisms():
    targets = [complete(5), complete(5).delete_edges([(0, 1)]), wagner().induced(range(6))]
    for f in list(all_graphs(6, 5)) + [complete(5) + complete(1)]:
        if not in_p_k(f, 2):
            continue
        for g in targets:
            if search_oddomorphism(f, g, weak=True) is not None:
                assert in_p_k(g, 2)


def test_small_genus_one_graphs_exclude_two_kuratowski_graphs():
    toroidal = [complete(5), complete_bipartite(3, 3), complete(6), complete(7), complete_bipartite(4, 4), petersen(), wagner()]
    for g in toroidal:
        assert in_p_k(g, 2)


def test_treewidth_two_sources_onto_k23_contain_k23():
    k23 = complete_bipartite(2, 3)
    found = 0
    for f in connected_graphs(7, 5):
        if treewidth(f) > 2:
            continue
        if search_oddomorphism(f, k23) is not None:
            found += 1
            assert has_minor(f, k23)
    assert found > 0
