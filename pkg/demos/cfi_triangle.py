"""Which small patterns tell the two CFI graphs over a triangle apart?

The untwisted graph over C3 is two disjoint triangles, the twisted one a
6-cycle. A connected pattern gets different homomorphism counts into the two
exactly when it has a weak oddomorphism onto the triangle; this script lists
both sides for every connected pattern on at most five vertices.

    python demos/cfi_triangle.py
"""

from __future__ import annotations

from homind import build_cfi_pair, cfi_counts, encode_graph6, search_oddomorphism
from homind.families import connected_graphs
from homind.graph import cycle


def main() -> None:
    base = cycle(3)
    pair = build_cfi_pair(base)
    print(f"G0 = {encode_graph6(pair.even)}  G1 = {encode_graph6(pair.odd)}")
    print(f"{'pattern':<10}{'n':>3}{'m':>3}{'hom(F,G0)':>11}{'hom(F,G1)':>11}  weak oddomorphism")
    for f in connected_graphs(5):
        c0, c1 = cfi_counts(f, pair)
        cert = search_oddomorphism(f, base, weak=True)
        witness = "-" if cert is None else ",".join(map(str, cert.phi.map))
        mark = "*" if c0 != c1 else " "
        print(f"{encode_graph6(f):<10}{f.n:>3}{f.size:>3}{c0:>11}{c1:>11} {mark} {witness}")
        assert (c0 != c1) == (cert is not None)


if __name__ == "__main__":
    main()
