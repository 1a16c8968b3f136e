"""Tree decompositions, exact treewidth by subset DP, and decomposition weight."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, bits

DEFAULT_MAX_ORDER = 15


@dataclass(frozen=True)
class TreeDecomposition:
    """``tree`` is a tree on nodes ``0..len(bags)-1``; ``bags[t]`` is a vertex bitmask of ``subject``."""

    tree: Graph
    bags: tuple[int, ...]
    subject: Graph

    @property
    def width(self) -> int:
        return max((b.bit_count() for b in self.bags), default=0) - 1

    @property
    def adhesion(self) -> int:
        return max(((self.bags[s] & self.bags[t]).bit_count() for s, t in self.tree.edges()), default=0)

    @property
    def weight(self) -> int:
        return decomposition_weight(self)

    def bag_lists(self) -> list[list[int]]:
        return [list(bits(b)) for b in self.bags]

    def validate(self) -> None:
        """Raise :class:`GraphError` unless every decomposition axiom holds."""
        t, g = self.tree, self.subject
        if t.n != len(self.bags) or t.n == 0 or not t.is_tree():
            raise GraphError("decomposition tree is not a tree matching the bag list")
        if any(b & ~g.full_mask for b in self.bags):
            raise GraphError("bag contains a vertex outside the subject graph")
        for u, v in g.edges():
            pair = (1 << u) | (1 << v)
            if not any(b & pair == pair for b in self.bags):
                raise GraphError(f"edge {u}-{v} is not covered by any bag")
        for v in g.vertices():
            nodes = 0
            for i, b in enumerate(self.bags):
                if (b >> v) & 1:
                    nodes |= 1 << i
            if not nodes:
                raise GraphError(f"vertex {v} lies in no bag")
            if len(t.component_masks(nodes)) != 1:
                raise GraphError(f"bags containing vertex {v} are not connected in the tree")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except GraphError:
            return False
        return True


def decomposition_weight(d: TreeDecomposition) -> int:
    """Sum of squared bag sizes."""
    return sum(b.bit_count() ** 2 for b in d.bags)


def _reach_set(g: Graph, inner: int, v: int) -> int:
    """Vertices outside ``inner | {v}`` reachable from ``v`` through ``inner``."""
    seen = 1 << v
    frontier = 1 << v
    while frontier:
        nxt = 0
        for w in bits(frontier):
            nxt |= g.adj[w]
        frontier = nxt & inner & ~seen
        seen |= frontier
    nb = 0
    for w in bits(seen):
        nb |= g.adj[w]
    return nb & ~seen & ~inner


def elimination_width(g: Graph, order: list[int]) -> int:
    """Width of the decomposition induced by eliminating vertices in ``order``."""
    if g.n == 0:
        return -1
    done = 0
    width = 0
    for v in order:
        width = max(width, _reach_set(g, done, v).bit_count())
        done |= 1 << v
    return width


def treewidth_ordering(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> tuple[int, list[int]]:
    """Exact treewidth and an optimal elimination ordering via DP over vertex subsets."""
    n = g.n
    if n > max_order:
        raise GraphError(f"exact treewidth requested for order {n} > bound {max_order}")
    if n == 0:
        return -1, []
    size = 1 << n
    best = [0] * size
    choice = [0] * size
    best[0] = -1
    for s in range(1, size):
        low, arg = n + 1, -1
        for v in bits(s):
            rest = s & ~(1 << v)
            prev = best[rest]
            if prev >= low:
                continue
            q = _reach_set(g, rest, v).bit_count()
            val = prev if prev > q else q
            if val < low:
                low, arg = val, v
        best[s] = low
        choice[s] = arg
    order = []
    s = size - 1
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return best[size - 1], order


def decomposition_from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are the elimination cliques of ``order``."""
    n = g.n
    if n == 0:
        return TreeDecomposition(Graph.empty(1), (0,), g)
    pos = {v: i for i, v in enumerate(order)}
    fill = list(g.adj)
    bags = []
    parent_vertex = []
    for v in order:
        later = 0
        for w in bits(fill[v]):
            if pos[w] > pos[v]:
                later |= 1 << w
        for w in bits(later):
            fill[w] |= later & ~(1 << w)
        bags.append(later | (1 << v))
        parent_vertex.append(min(bits(later), key=pos.__getitem__) if later else None)
    edges = []
    roots = []
    for i, p in enumerate(parent_vertex):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    edges.extend(zip(roots, roots[1:]))
    d = TreeDecomposition(Graph.from_edges(n, edges), tuple(bags), g)
    return prune_decomposition(d)


def prune_decomposition(d: TreeDecomposition) -> TreeDecomposition:
    """Merge every bag contained in a neighbouring bag into that neighbour."""
    adj = {t: set(d.tree.neighbors(t)) for t in d.tree.vertices()}
    bags = dict(enumerate(d.bags))
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for t in sorted(bags):
            sup = next((s for s in sorted(adj[t]) if bags[t] & ~bags[s] == 0), None)
            if sup is None:
                continue
            for s in adj[t]:
                if s != sup:
                    adj[s].discard(t)
                    adj[s].add(sup)
                    adj[sup].add(s)
            adj[sup].discard(t)
            del adj[t], bags[t]
            changed = True
            break
    keys = sorted(bags)
    index = {t: i for i, t in enumerate(keys)}
    edges = {(min(index[a], index[b]), max(index[a], index[b])) for a in keys for b in adj[a]}
    return TreeDecomposition(Graph.from_edges(len(keys), sorted(edges)), tuple(bags[t] for t in keys), d.subject)


def exact_treewidth(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> tuple[int, TreeDecomposition]:
    width, order = treewidth_ordering(g, max_order)
    d = decomposition_from_ordering(g, order)
    assert d.width == width or g.n == 0
    return width, d


def treewidth(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> int:
    return treewidth_ordering(g, max_order)[0]


def split_decomposition(d: TreeDecomposition, part: int) -> tuple[TreeDecomposition, TreeDecomposition]:
    """Restrict ``d`` to a union of components ``part`` and to its complement.

    Both results keep the tree of ``d``; their subjects are the induced subgraphs
    with vertices renumbered in increasing order.
    """
    g = d.subject
    rest = g.full_mask & ~part
    for v in bits(part):
        if g.adj[v] & rest:
            raise GraphError("split part is not a union of connected components")
    out = []
    for side in (part, rest):
        verts = list(bits(side))
        index = {v: i for i, v in enumerate(verts)}
        bags = tuple(sum(1 << index[v] for v in bits(b & side)) for b in d.bags)
        out.append(TreeDecomposition(d.tree, bags, g.induced(verts)))
    return out[0], out[1]


def find_noncut_low_degree_vertex(g: Graph, k: int) -> int:
    """Lowest-index vertex of degree at most ``k`` whose removal keeps ``g`` connected."""
    if not g.is_connected():
        raise GraphError("graph must be connected")
    full = g.full_mask
    for v in g.vertices():
        if g.degree(v) <= k and len(g.component_masks(full & ~(1 << v))) <= 1:
            return v
    raise GraphError(f"no non-cut vertex of degree <= {k}; treewidth exceeds {k}")
