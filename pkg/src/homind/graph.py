"""Simple undirected graphs on dense vertex indices, stored as adjacency bitsets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised when a structural operation receives invalid input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """A finite, loopless graph without multi-edges.

    ``adj[v]`` is a bitmask of the neighbours of ``v``. Instances are immutable
    and hashable; equality is equality of labelled graphs.
    """

    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.adj)
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
            for w in bits(row):
                if not (self.adj[w] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    # construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for order {n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls((0,) * n)

    # basic queries --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << len(self.adj)) - 1

    def vertices(self) -> range:
        return range(len(self.adj))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u, row in enumerate(self.adj) for v in bits(row >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all((self.adj[v] | (1 << v)) & m == m for v in bits(m))

    # connectivity ---------------------------------------------------------

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within``, as bitmasks."""
        remaining = self.full_mask if within is None else within
        comps = []
        while remaining:
            frontier = remaining & -remaining
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & remaining & ~comp
            comps.append(comp)
            remaining &= ~comp
        return comps

    def components(self) -> list[list[int]]:
        return [list(bits(c)) for c in self.component_masks()]

    def is_connected(self) -> bool:
        return len(self.component_masks()) <= 1

    def is_k_connected(self, k: int) -> bool:
        """``n >= k+1`` and removing fewer than ``k`` vertices leaves it connected."""
        if self.n < k + 1:
            return False
        full = self.full_mask
        for r in range(k):
            for removed in combinations(range(self.n), r):
                if len(self.component_masks(full & ~mask_of(removed))) > 1:
                    return False
        return True

    def is_cut_vertex(self, v: int) -> bool:
        before = len(self.component_masks())
        return len(self.component_masks(self.full_mask & ~(1 << v))) > before

    def is_forest(self) -> bool:
        return self.size == self.n - len(self.component_masks())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.is_connected() and self.size == self.n - 1

    def isolated_vertices(self) -> list[int]:
        return [v for v, row in enumerate(self.adj) if row == 0]

    # derived graphs ---------------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for w in bits(self.adj[v]):
                i = index.get(w)
                if i is not None:
                    row |= 1 << i
            adj.append(row)
        return Graph(tuple(adj))

    def induced_mask(self, mask: int) -> "Graph":
        return self.induced(list(bits(mask)))

    def delete_vertices(self, removed: Iterable[int]) -> "Graph":
        gone = mask_of(removed)
        return self.induced([v for v in self.vertices() if not (gone >> v) & 1])

    def delete_edges(self, removed: Iterable[Sequence[int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in removed:
            if not self.has_edge(u, v):
                raise GraphError(f"{u}-{v} is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(tuple(adj))

    def add_edges(self, added: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges()) + [tuple(e) for e in added])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which vertex ``v`` is renamed ``perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            adj[perm[v]] = mask_of(perm[w] for w in bits(row))
        return Graph(tuple(adj))

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def __add__(self, other: "Graph") -> "Graph":
        return disjoint_union(self, other)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    for g in graphs:
        off = len(adj)
        adj.extend(row << off for row in g.adj)
    return Graph(tuple(adj))


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Identify the endpoints of edge ``uv``.

    The merged vertex takes the smaller index; later vertices shift down by one.
    """
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    return identify_vertices(g, u, v)


def identify_vertices(g: Graph, u: int, v: int) -> Graph:
    """Merge ``u`` and ``v`` (any pair), dropping the loop an edge ``uv`` would create."""
    if u == v:
        raise GraphError("cannot identify a vertex with itself")
    keep, gone = min(u, v), max(u, v)
    new_index = [i if i < gone else i - 1 for i in range(g.n)]
    new_index[gone] = keep
    edges = {
        (min(new_index[a], new_index[b]), max(new_index[a], new_index[b]))
        for a, b in g.edges()
    }
    edges.discard((keep, keep))
    return Graph.from_edges(g.n - 1, sorted(edges))


def torso(g: Graph, x: Iterable[int]) -> Graph:
    """Torso of ``g`` on ``x``: ``g[x]`` plus a clique on ``N(C)`` for every component ``C`` of ``g - x``.

    Vertices of the result are the elements of ``x`` in increasing order.
    """
    xs = sorted(set(x))
    if any(not 0 <= v < g.n for v in xs):
        raise GraphError(f"torso vertex set {xs} out of range for order {g.n}")
    xmask = mask_of(xs)
    adj = {v: g.adj[v] & xmask for v in xs}
    for comp in g.component_masks(g.full_mask & ~xmask):
        nbhd = 0
        for w in bits(comp):
            nbhd |= g.adj[w]
        nbhd &= xmask
        for v in bits(nbhd):
            adj[v] |= nbhd & ~(1 << v)
    return Graph.from_edges(
        len(xs), [(xs.index(a), xs.index(b)) for a in xs for b in bits(adj[a]) if a < b]
    )


def clique_sum(
    g1: Graph,
    g2: Graph,
    s1: Sequence[int],
    s2: Sequence[int],
    drop: Iterable[Sequence[int]] = (),
) -> Graph:
    """Glue ``g2`` onto ``g1`` identifying ``s2[i]`` with ``s1[i]``, then delete ``drop``.

    Vertices of ``g1`` keep their indices; the remaining vertices of ``g2`` follow
    in increasing order. ``drop`` is given in ``g1`` indices.
    """
    if len(s1) != len(s2):
        raise GraphError("clique-sum sides have different sizes")
    if len(set(s1)) != len(s1) or len(set(s2)) != len(s2):
        raise GraphError("clique-sum vertex lists contain repeats")
    if not g1.is_clique(s1) or not g2.is_clique(s2):
        raise GraphError("clique-sum sides must induce cliques")
    glue = dict(zip(s2, s1))
    rest = [v for v in g2.vertices() if v not in glue]
    index = dict(glue)
    index.update({v: g1.n + i for i, v in enumerate(rest)})
    edges = set(g1.edges())
    for a, b in g2.edges():
        x, y = index[a], index[b]
        edges.add((min(x, y), max(x, y)))
    s1set = set(s1)
    for a, b in drop:
        if a not in s1set or b not in s1set or a == b:
            raise GraphError(f"dropped edge {a}-{b} is not inside the glued clique")
        edges.discard((min(a, b), max(a, b)))
    return Graph.from_edges(g1.n + len(rest), sorted(edges))


# named graphs ---------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wagner() -> Graph:
    """The 8-cycle with its four long diagonals."""
    return Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
