"""Even and odd CFI graphs over a connected base graph."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Graph, GraphError, bits
from .homs import count_homs

DEFAULT_MAX_VERTICES = 4096


@dataclass(frozen=True)
class CFIPair:
    """``gadget_index[i]`` is ``(v, S)`` for CFI vertex ``i``: a base vertex and a set of incident base edges.

    The same index applies to both graphs except that ``odd_index`` differs at
    the twist vertex.
    """

    base: Graph
    even: Graph
    odd: Graph
    even_index: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    odd_index: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    twist: int

    def sidecar(self) -> str:
        def enc(index):
            return [{"base_vertex": v, "edges": [list(e) for e in s]} for v, s in index]

        return json.dumps(
            {"twist": self.twist, "even": enc(self.even_index), "odd": enc(self.odd_index)}, indent=1
        )


def cfi_graph(base: Graph, twisted: frozenset[int] | set[int] = frozenset()):
    """CFI graph in which gadgets at ``twisted`` carry odd subsets, all others even ones."""
    index = []
    for v in base.vertices():
        incident = [(min(v, w), max(v, w)) for w in bits(base.adj[v])]
        want = 1 if v in twisted else 0
        for sub in range(1 << len(incident)):
            if sub.bit_count() % 2 == want:
                index.append((v, tuple(e for i, e in enumerate(incident) if (sub >> i) & 1)))
    sets = [set(s) for _, s in index]
    edges = []
    for i, (u, _) in enumerate(index):
        for j in range(i + 1, len(index)):
            w = index[j][0]
            if not base.has_edge(u, w):
                continue
            e = (min(u, w), max(u, w))
            if (e in sets[i]) == (e in sets[j]):
                edges.append((i, j))
    return Graph.from_edges(len(index), edges), tuple(index)


def cfi_size(base: Graph) -> int:
    return sum(1 << max(base.degree(v) - 1, 0) for v in base.vertices())


def build_cfi_pair(base: Graph, twist: int | None = None, max_vertices: int = DEFAULT_MAX_VERTICES) -> CFIPair:
    """Even graph ``G0`` and odd graph ``G1`` (twisted at ``twist``, default the lowest vertex)."""
    if base.n == 0 or not base.is_connected():
        raise GraphError("CFI base must be a non-empty connected graph")
    if cfi_size(base) > max_vertices:
        raise GraphError(f"CFI graphs would have {cfi_size(base)} > {max_vertices} vertices")
    twist = 0 if twist is None else twist
    if not 0 <= twist < base.n:
        raise GraphError("twist vertex out of range")
    even, even_index = cfi_graph(base)
    odd, odd_index = cfi_graph(base, {twist})
    return CFIPair(base, even, odd, even_index, odd_index, twist)


def cfi_counts(f: Graph, pair: CFIPair) -> tuple[int, int]:
    return count_homs(f, pair.even, bigint=True), count_homs(f, pair.odd, bigint=True)


def cfi_distinguishes(f: Graph, pair: CFIPair) -> bool:
    a, b = cfi_counts(f, pair)
    return a != b
