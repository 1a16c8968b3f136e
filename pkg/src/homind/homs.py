"""Homomorphism enumeration and exact homomorphism counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import Graph, GraphError, bits
from .treewidth import treewidth_ordering

DEFAULT_BUDGET = 5_000_000
ACCUMULATOR_BITS = 128


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured budget."""


class HomCountOverflow(OverflowError):
    """A count does not fit the fixed-width accumulator; retry with ``bigint=True``."""


@dataclass(frozen=True)
class Homomorphism:
    source: Graph
    target: Graph
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.map) != self.source.n:
            raise GraphError("map length differs from source order")
        if any(not 0 <= x < self.target.n for x in self.map):
            raise GraphError("map leaves the target vertex range")
        for u, v in self.source.edges():
            if not self.target.has_edge(self.map[u], self.map[v]):
                raise GraphError(f"edge {u}-{v} is not preserved")

    def fibre(self, x: int) -> list[int]:
        return [a for a, y in enumerate(self.map) if y == x]

    def fibre_mask(self, x: int) -> int:
        m = 0
        for a, y in enumerate(self.map):
            if y == x:
                m |= 1 << a
        return m

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n


def is_homomorphism(f: Graph, g: Graph, phi) -> bool:
    return len(phi) == f.n and all(g.has_edge(phi[u], phi[v]) for u, v in f.edges())


def identity(f: Graph) -> Homomorphism:
    return Homomorphism(f, f, tuple(range(f.n)))


def _search_order(f: Graph) -> list[int]:
    """Each component in BFS order from its highest-degree vertex."""
    order: list[int] = []
    for comp in f.component_masks():
        start = max(bits(comp), key=lambda v: (f.degree(v), -v))
        seen = 1 << start
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(bits(f.adj[v] & ~seen), key=lambda w: (-f.degree(w), w)):
                seen |= 1 << w
                queue.append(w)
    return order


def adjacency_array(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def hom_table(f: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All homomorphisms ``f -> g`` as rows of an integer array, in lexicographic order."""
    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    a = adjacency_array(g)
    table = np.zeros((1, 0), dtype=np.int16)
    for i, v in enumerate(order):
        earlier = [pos[w] for w in bits(f.adj[v]) if pos[w] < i]
        if earlier:
            allowed = a[table[:, earlier[0]]]
            for j in earlier[1:]:
                allowed = allowed & a[table[:, j]]
        else:
            allowed = np.ones((table.shape[0], g.n), dtype=bool)
        rows, targets = np.nonzero(allowed)
        if rows.size > budget:
            raise BudgetExceeded(f"more than {budget} partial homomorphisms {f.n}->{g.n}")
        table = np.concatenate([table[rows], targets[:, None].astype(np.int16)], axis=1)
    out = np.empty_like(table)
    for v, i in pos.items():
        out[:, v] = table[:, i]
    if out.shape[0] > 1 and f.n:
        out = out[np.lexsort(out.T[::-1])]
    return out


def enumerate_homs(f: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> Iterator[Homomorphism]:
    """Stream every homomorphism ``f -> g`` in lexicographic order of the map."""
    for row in hom_table(f, g, budget):
        yield Homomorphism(f, g, tuple(int(x) for x in row))


def count_homs_brute(f: Graph, g: Graph) -> int:
    """Check every map ``V(f) -> V(g)``; reference implementation for small inputs."""
    if f.n == 0:
        return 1
    if g.n == 0:
        return 0
    edges = f.edges()
    total = 0
    phi = [0] * f.n
    while True:
        if all(g.has_edge(phi[u], phi[v]) for u, v in edges):
            total += 1
        i = 0
        while i < f.n and phi[i] == g.n - 1:
            phi[i] = 0
            i += 1
        if i == f.n:
            return total
        phi[i] += 1


def _count_by_extension(f: Graph, g: Graph, budget: int) -> int:
    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    a = adjacency_array(g)
    table = np.zeros((1, 0), dtype=np.int16)
    for i, v in enumerate(order):
        earlier = [pos[w] for w in bits(f.adj[v]) if pos[w] < i]
        if earlier:
            allowed = a[table[:, earlier[0]]]
            for j in earlier[1:]:
                allowed = allowed & a[table[:, j]]
        else:
            allowed = np.ones((table.shape[0], g.n), dtype=bool)
        if i == len(order) - 1:
            return int(allowed.sum())
        rows, targets = np.nonzero(allowed)
        if rows.size > budget:
            raise BudgetExceeded(f"more than {budget} partial homomorphisms")
        table = np.concatenate([table[rows], targets[:, None].astype(np.int16)], axis=1)
    return int(table.shape[0])


def _greedy_order(f: Graph) -> list[int]:
    """Min-degree elimination ordering for patterns beyond the exact-treewidth bound."""
    adj = {v: set(f.neighbors(v)) for v in f.vertices()}
    order = []
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        nb = adj.pop(v)
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        order.append(v)
    return order


def _count_by_elimination(f: Graph, g: Graph, order: list[int]) -> int:
    """Sum-product over the decomposition induced by an elimination ordering."""
    big = g.n ** f.n >= 2**62
    a = adjacency_array(g).astype(object if big else np.int64)
    factors: list[tuple[tuple[int, ...], np.ndarray]] = [((u, v), a) for u, v in f.edges()]
    scalar = 1
    for v in order:
        mine = [fac for fac in factors if v in fac[0]]
        factors = [fac for fac in factors if v not in fac[0]]
        if not mine:
            scalar *= g.n
            continue
        scope = sorted({x for vars_, _ in mine for x in vars_})
        prod = None
        for vars_, arr in mine:
            perm = sorted(range(len(vars_)), key=lambda i: scope.index(vars_[i]))
            arr = np.transpose(arr, perm)
            present = sorted(vars_, key=scope.index)
            shape = [g.n if x in present else 1 for x in scope]
            arr = arr.reshape(shape)
            prod = arr if prod is None else prod * arr
        prod = prod.sum(axis=scope.index(v))
        rest = tuple(x for x in scope if x != v)
        if rest:
            factors.append((rest, prod))
        else:
            scalar *= int(prod)
    for _, arr in factors:
        scalar *= int(arr)
    return int(scalar)


def count_homs(
    f: Graph,
    g: Graph,
    *,
    bigint: bool = False,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Exact number of homomorphisms ``f -> g``.

    ``method`` is ``"auto"``, ``"brute"``, ``"extend"`` or ``"dp"``. Counts of
    ``2**127`` or more raise :class:`HomCountOverflow` unless ``bigint`` is set.
    """
    if method == "brute":
        total = count_homs_brute(f, g)
    else:
        total = 1
        for comp in f.component_masks():
            part = f.induced_mask(comp)
            total *= _count_component(part, g, method, budget)
            if total == 0:
                break
    if not bigint and total >= 1 << (ACCUMULATOR_BITS - 1):
        raise HomCountOverflow(f"hom count exceeds the {ACCUMULATOR_BITS}-bit accumulator")
    return total


def _count_component(f: Graph, g: Graph, method: str, budget: int) -> int:
    if g.n == 0:
        return 0
    if f.n == 1:
        return g.n
    if method == "auto":
        dmax = max(g.max_degree(), 1)
        extension_cost = g.n * dmax ** (f.n - 1)
        method = "extend" if extension_cost <= 200_000 else "dp"
    if method == "extend":
        return _count_by_extension(f, g, budget)
    if method == "dp":
        order = treewidth_ordering(f)[1] if f.n <= 12 else _greedy_order(f)
        return _count_by_elimination(f, g, order)
    raise ValueError(f"unknown counting method {method!r}")
