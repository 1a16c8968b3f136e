"""Counting homomorphisms from a contraction without contracting.

A contractor for G is a rational combination of series-parallel bilabelled
graphs whose homomorphism matrices into G sum to the identity. Gluing it onto
F minus the edge uv then counts homomorphisms from F/uv, for every F.

    python demos/contractor_k3.py
"""

from __future__ import annotations

import random

from homind import Graph, contract_edge, count_homs, simulate_contraction, solve_contractor
from homind.graph import complete


def main(seed: int = 1) -> None:
    g, h = complete(2), complete(3)
    alpha = solve_contractor(g, h, max_edges=4)
    print("contractor for K2 and K3:")
    for term, coeff in alpha.terms:
        print(f"  {coeff!s:>5} * {term.expr}")
    rng = random.Random(seed)
    for _ in range(6):
        n = rng.randint(3, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5] or [(0, 1)]
        f = Graph.from_edges(n, edges)
        e = rng.choice(f.edges())
        direct = count_homs(contract_edge(f, *e), h)
        via = simulate_contraction(f, e, h, alpha)
        print(f"F with edges {f.edges()}, e = {e}: hom(F/e, K3) = {direct}, via contractor = {via}")
        assert direct == via


if __name__ == "__main__":
    main()
