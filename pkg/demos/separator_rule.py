"""Why separator classes are joined by a parity-corrected rule.

Source F: an isolated vertex 0 plus the path 1-3-2. Target G: the path 0-2-1.
The map (0, 0, 1, 2) is an oddomorphism. Cutting along S = {0, 3} leaves two
components, {1} and {2}, while G - {0, 2} has one, so the source can shrink.

Joining the separator classes {0} and {3} only when an odd number of edges
runs between them (none do) leaves class {0} isolated over target vertex 0,
where it becomes even and the fibre over 0 loses its odd vertex. The default
rule counts the edges into the kept component too and joins them.

    python demos/separator_rule.py
"""

from __future__ import annotations

from homind import Graph, Homomorphism, ReductionError, encode_graph6, separator_reduce, verify_oddomorphism


def main() -> None:
    f = Graph.from_edges(4, [(1, 3), (2, 3)])
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    ok, cert = verify_oddomorphism(Homomorphism(f, g, (0, 0, 1, 2)))
    print("input is an oddomorphism:", ok)
    print("parities:", [p.value for p in cert.report.vertex_parity])

    try:
        separator_reduce(cert, (0, 3), odd_edge_rule=True)
    except ReductionError as exc:
        print("edge-parity rule:", exc)

    res = separator_reduce(cert, (0, 3))
    inst = res.instance
    print("components of F - S:", inst.components)
    print("parity matrix P:", inst.parity.to_lists(), " kept index set I:", inst.chosen)
    print("separator classes:", inst.partition)
    out = res.cert
    print(f"reduced source {encode_graph6(out.phi.source)} with edges {out.phi.source.edges()}")
    print("reduced map:", out.phi.map, " oddomorphism:", verify_oddomorphism(out.phi)[0])
    print("minor of F[C + S] plus a clique on S:", res.minor_checked)


if __name__ == "__main__":
    main()
