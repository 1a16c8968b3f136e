from __future__ import annotations

from homind.families import all_graphs, connected_graphs
from homind.graph import Graph, complete, cycle, path, wagner
from homind.homs import Homomorphism, hom_table, identity
from homind.oddo import (
    Parity,
    batch_parity,
    classify_parity,
    covering_mask,
    is_oddomorphism,
    iter_certificates,
    plain_mask,
    restrict_oddomorphism,
    search_oddomorphism,
    verify_oddomorphism,
    verify_weak_oddomorphism,
    verify_weak_oddomorphism_bruteforce,
)


def parity_oracle(f: Graph, g: Graph, phi) -> list[str]:
    """Parities straight from the definition, using plain lists."""
    out = []
    for a in range(f.n):
        counts = [
            sum(1 for b in f.neighbors(a) if phi[b] == y) % 2 for y in g.neighbors(phi[a])
        ]
        if all(c == 1 for c in counts):
            out.append("odd")
        elif all(c == 0 for c in counts):
            out.append("even")
        else:
            out.append("undefined")
    return out


def oddo_oracle(f: Graph, g: Graph, phi) -> bool:
    par = parity_oracle(f, g, phi)
    if "undefined" in par:
        return False
    return all(sum(1 for a in range(f.n) if phi[a] == x and par[a] == "odd") % 2 == 1 for x in range(g.n))


def test_identity_is_oddomorphism():
    for g in [cycle(5), wagner(), path(4) + complete(3)]:
        ok, cert = verify_oddomorphism(identity(g))
        assert ok
        assert all(p is Parity.ODD for p in cert.report.vertex_parity)
        assert cert.report.fibre_odd_count == (1,) * g.n


def test_alternating_c4_to_k2_is_even():
    phi = Homomorphism(cycle(4), complete(2), (0, 1, 0, 1))
    rep = classify_parity(phi)
    assert all(p is Parity.EVEN for p in rep.vertex_parity)
    assert rep.fibre_odd_count == (0, 0)
    assert not verify_oddomorphism(phi)[0]


def test_double_cover_c6_to_c3():
    phi = Homomorphism(cycle(6), cycle(3), (0, 1, 2, 0, 1, 2))
    rep = classify_parity(phi)
    assert all(p is Parity.ODD for p in rep.vertex_parity)
    assert rep.fibre_odd_count == (2, 2, 2)
    assert not is_oddomorphism(phi)
    assert verify_weak_oddomorphism(phi) is None
    assert search_oddomorphism(cycle(6), cycle(3), weak=True) is None


def test_vertices_over_isolated_targets_are_odd():
    phi = Homomorphism(Graph.empty(3), Graph.empty(1), (0, 0, 0))
    assert classify_parity(phi).vertex_parity == (Parity.ODD,) * 3
    assert is_oddomorphism(phi)
    assert not is_oddomorphism(Homomorphism(Graph.empty(2), Graph.empty(1), (0, 0)))


def test_parity_matches_definition_on_all_small_maps():
    targets = [g for g in all_graphs(3, 1)]
    for f in all_graphs(4, 1):
        for g in targets:
            table = hom_table(f, g)
            mask = plain_mask(f, g, table)
            odd, defined = batch_parity(f, g, table)
            for k, row in enumerate(table.tolist()):
                par = parity_oracle(f, g, row)
                rep = classify_parity(Homomorphism(f, g, tuple(row)))
                assert [p.value for p in rep.vertex_parity] == par
                assert list(odd[k]) == [p == "odd" for p in par]
                assert list(defined[k]) == [p != "undefined" for p in par]
                assert bool(mask[k]) == oddo_oracle(f, g, row)


def test_weak_check_agrees_with_subgraph_sweep():
    targets = [complete(2), complete(3), path(3)]
    checked = 0
    for f in all_graphs(5, 1):
        for g in targets:
            for row in hom_table(f, g).tolist():
                phi = Homomorphism(f, g, tuple(row))
                fast = verify_weak_oddomorphism(phi)
                slow = verify_weak_oddomorphism_bruteforce(phi)
                assert (fast is None) == (slow is None)
                if fast is not None:
                    assert verify_oddomorphism(fast.weak_homomorphism())[0]
                checked += 1
    assert checked > 1000


def test_plain_oddomorphism_is_its_own_weak_certificate():
    cert = verify_weak_oddomorphism(identity(cycle(5)))
    assert cert is not None and cert.is_plain and cert.weak_subgraph() == cycle(5)


def test_isolated_extra_vertex_keeps_a_certificate():
    f = cycle(3) + Graph.empty(1)
    phi = Homomorphism(f, cycle(3), (0, 1, 2, 0))
    cert = verify_weak_oddomorphism(phi)
    assert cert is not None
    # the extra vertex is even, so the map is already a plain oddomorphism
    assert is_oddomorphism(phi)
    sub = Homomorphism(cycle(3), cycle(3), (0, 1, 2))
    assert is_oddomorphism(sub)


def test_search_k5_finds_identity_type_map():
    cert = search_oddomorphism(complete(5), complete(5))
    assert cert is not None and sorted(cert.phi.map) == list(range(5))


def test_iter_certificates_is_exhaustive():
    for f in connected_graphs(5, 2):
        for g in [complete(2), path(3), complete(3)]:
            want = [tuple(r) for r in hom_table(f, g).tolist() if oddo_oracle(f, g, r)]
            got = [c.phi.map for c in iter_certificates(f, g)]
            assert got == sorted(want)


def test_covering_mask_is_a_necessary_condition():
    f, g = cycle(6), cycle(3)
    table = hom_table(f, g)
    cover = covering_mask(f, g, table)
    for k, row in enumerate(table.tolist()):
        hits_all = len(set(row)) == 3 and all(
            any({row[a], row[b]} == {x, y} for a, b in f.edges()) for x, y in g.edges()
        )
        assert bool(cover[k]) == hits_all


def test_restriction_unchanged_on_full_target():
    _, cert = verify_oddomorphism(identity(wagner()))
    same = restrict_oddomorphism(cert, range(8))
    assert same.phi.map == cert.phi.map and same.phi.source == wagner()


def test_restriction_of_identity_is_identity():
    _, cert = verify_oddomorphism(identity(wagner()))
    sub = restrict_oddomorphism(cert, [0, 1, 2, 4])
    assert sub.phi.map == (0, 1, 2, 3)
    assert sub.phi.source == sub.phi.target == wagner().induced([0, 1, 2, 4])
    assert verify_oddomorphism(sub.phi)[0]


def test_restriction_to_subgraphs_stays_odd():
    for f in connected_graphs(6, 3):
        for cert in iter_certificates(f, path(3)):
            for keep in ([0, 1], [1, 2], [0, 2]):
                sub = restrict_oddomorphism(cert, keep)
                assert verify_oddomorphism(sub.weak_homomorphism())[0]


def test_certificate_json_round_trip():
    import json

    _, cert = verify_oddomorphism(identity(cycle(4)))
    data = json.loads(cert.to_json())
    assert data["map"] == [0, 1, 2, 3] and data["fibre_odd_count"] == [1, 1, 1, 1]
