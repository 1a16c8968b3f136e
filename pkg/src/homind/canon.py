"""Canonical labelling by colour refinement and individualisation.

The search explores the individualisation-refinement tree completely except for
subtrees pruned by automorphisms discovered along the way, so the result is
exact; ``max_order`` only bounds the running time callers are willing to pay.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, GraphError, bits
from .graph6 import encode_graph6

DEFAULT_MAX_ORDER = 12


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; fragment order depends only on invariants."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((g.adj[v] & m).bit_count() for m in masks) for v in cell}
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    new_cells.append(groups[key])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _orbit_roots(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for i, j in enumerate(p):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labelling(
    g: Graph, colours: Sequence[int] | None = None, max_order: int = DEFAULT_MAX_ORDER
) -> tuple[int, ...]:
    """Return ``order`` such that ``order[i]`` is the vertex placed at canonical position ``i``."""
    n = g.n
    if n > max_order:
        raise GraphError(f"canonical form requested for order {n} > bound {max_order}")
    if n == 0:
        return ()
    if colours is None:
        cells = [list(range(n))]
    else:
        by_colour: dict[int, list[int]] = {}
        for v in range(n):
            by_colour.setdefault(colours[v], []).append(v)
        cells = [by_colour[c] for c in sorted(by_colour)]

    best_cert: tuple[int, ...] | None = None
    best_order: tuple[int, ...] | None = None
    autos: list[tuple[int, ...]] = []

    def certificate(order: list[int]) -> tuple[int, ...]:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            r = 0
            for w in bits(g.adj[v]):
                r |= 1 << pos[w]
            rows.append(r)
        return tuple(rows)

    def search(cells: list[list[int]], path: list[int]) -> None:
        nonlocal best_cert, best_order
        cells = _refine(g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, tuple(order)
            elif cert == best_cert:
                perm = [0] * n
                for a, b in zip(order, best_order):
                    perm[a] = b
                autos.append(tuple(perm))
            return
        explored: list[int] = []
        for w in sorted(cells[target]):
            if explored:
                fixing = [p for p in autos if all(p[x] == x for x in path)]
                if fixing:
                    roots = _orbit_roots(n, fixing)
                    if any(roots[w] == roots[e] for e in explored):
                        continue
            child = cells[:target] + [[w], [x for x in cells[target] if x != w]] + cells[target + 1 :]
            search(child, path + [w])
            explored.append(w)

    search(cells, [])
    assert best_order is not None
    return best_order


def canonical_form(
    g: Graph, colours: Sequence[int] | None = None, max_order: int = DEFAULT_MAX_ORDER
) -> bytes:
    """Bytes identifying ``g`` (with optional vertex colours) up to isomorphism."""
    order = canonical_labelling(g, colours, max_order)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    form = encode_graph6(g.relabel(pos)).encode("ascii")
    if colours is not None:
        form += b"|" + ",".join(str(colours[v]) for v in order).encode("ascii")
    return form


def canonical_graph(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> Graph:
    order = canonical_labelling(g, None, max_order)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return g.relabel(pos)


def is_isomorphic(g: Graph, h: Graph, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    if g.n != h.n or g.size != h.size or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g, max_order=max_order) == canonical_form(h, max_order=max_order)
