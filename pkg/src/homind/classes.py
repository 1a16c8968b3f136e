"""Graph-class predicates, minor containment, deletion and elimination distance.

Minor containment is decided by a memoized search over contractions. When the
host is connected, the branch sets of any model can be grown until they cover
every vertex, so only contractions (and a final spanning-subgraph test) are
needed; for a disconnected host a whole component may also be discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .canon import canonical_form
from .graph import (
    Graph,
    GraphError,
    bits,
    complete,
    complete_bipartite,
    contract_edge,
    disjoint_union,
    torso,
)
from .treewidth import treewidth


class SearchBudgetExceeded(RuntimeError):
    """A class-membership search visited more states than allowed."""


DEFAULT_STATE_BUDGET = 2_000_000


def _form(g: Graph) -> bytes:
    return canonical_form(g, max_order=max(g.n, 12))


# subgraph embedding -----------------------------------------------------------


def embeds(m: Graph, h: Graph) -> bool:
    """Is ``m`` isomorphic to a (not necessarily induced) subgraph of ``h``?"""
    if m.n > h.n or m.size > h.size:
        return False
    if m.n == 0:
        return True
    order = sorted(m.vertices(), key=lambda v: -m.degree(v))
    # put each vertex after an already-placed neighbour where possible
    placed: list[int] = []
    rest = list(order)
    while rest:
        nxt = next((v for v in rest if any(m.has_edge(v, p) for p in placed)), rest[0])
        rest.remove(nxt)
        placed.append(nxt)
    hdeg = [h.degree(x) for x in h.vertices()]
    cand = [sum(1 << x for x in h.vertices() if hdeg[x] >= m.degree(v)) for v in m.vertices()]
    phi = [-1] * m.n

    def go(i: int, used: int) -> bool:
        if i == len(placed):
            return True
        v = placed[i]
        allowed = cand[v] & ~used
        for u in bits(m.adj[v]):
            if phi[u] >= 0:
                allowed &= h.adj[phi[u]]
        for x in bits(allowed):
            phi[v] = x
            if go(i + 1, used | (1 << x)):
                return True
        phi[v] = -1
        return False

    return go(0, 0)


# minors -------------------------------------------------------------------------


def _strip_isolated(g: Graph) -> Graph:
    iso = g.isolated_vertices()
    return g.delete_vertices(iso) if iso else g


_MINOR_CACHE: dict[tuple[bytes, bytes], bool] = {}
_LABELLED_CACHE: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
_MINOR_CACHE_LIMIT = 200_000


def has_minor(g: Graph, m: Graph, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff ``m`` is a minor of ``g``."""
    if m.n == 0:
        return True
    if m.n > g.n or m.size > g.size:
        return False
    if m.n == g.n:
        return embeds(m, g)
    raw = (g.adj, m.adj)
    if raw in _LABELLED_CACHE:
        return _LABELLED_CACHE[raw]
    key = (_form(g), _form(m))
    if key not in _MINOR_CACHE:
        if len(_MINOR_CACHE) >= _MINOR_CACHE_LIMIT:
            _MINOR_CACHE.clear()
        _MINOR_CACHE[key] = _has_minor(g, m, budget)
    if len(_LABELLED_CACHE) >= _MINOR_CACHE_LIMIT:
        _LABELLED_CACHE.clear()
    _LABELLED_CACHE[raw] = _MINOR_CACHE[key]
    return _MINOR_CACHE[key]


def _has_minor(g: Graph, m: Graph, budget: int) -> bool:
    m_iso = len(m.isolated_vertices())
    if m_iso == 0:
        g = _strip_isolated(g)
    memo: dict[bytes, bool] = {}
    states = [0]

    def rec(h: Graph) -> bool:
        if h.n < m.n or h.size < m.size:
            return False
        comps = h.component_masks()
        if h.size - h.n + m.n + len(comps) < m.size + 1:
            return False
        if h.n == m.n:
            return embeds(m, h)
        key = _form(h)
        if key in memo:
            return memo[key]
        states[0] += 1
        if states[0] > budget:
            raise SearchBudgetExceeded(f"minor search exceeded {budget} states")
        memo[key] = False
        seen: set[bytes] = set()
        children = []
        for u, v in h.edges():
            c = contract_edge(h, u, v)
            k = _form(c)
            if k not in seen:
                seen.add(k)
                children.append(c)
        if len(comps) > 1:
            for comp in comps:
                c = h.delete_vertices(list(bits(comp)))
                k = _form(c)
                if k not in seen:
                    seen.add(k)
                    children.append(c)
        result = any(rec(c) for c in children)
        memo[key] = result
        return result

    return rec(g)


def has_topological_minor(g: Graph, m: Graph, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff some subdivision of ``m`` is a subgraph of ``g``.

    Search over vertex deletions and dissolutions of a vertex through a chosen
    pair of its neighbours; degrees never increase, which gives the pruning.
    """
    if m.n == 0:
        return True
    mdeg = sorted((m.degree(v) for v in m.vertices()), reverse=True)
    memo: dict[bytes, bool] = {}
    states = [0]

    def dominated(h: Graph) -> bool:
        hdeg = sorted((h.degree(v) for v in h.vertices()), reverse=True)
        return all(a >= b for a, b in zip(hdeg, mdeg))

    def rec(h: Graph) -> bool:
        if h.n < m.n or h.size < m.size or not dominated(h):
            return False
        if h.n == m.n:
            return embeds(m, h)
        key = _form(h)
        if key in memo:
            return memo[key]
        states[0] += 1
        if states[0] > budget:
            raise SearchBudgetExceeded(f"topological minor search exceeded {budget} states")
        memo[key] = False
        result = False
        for v in h.vertices():
            if rec(h.delete_vertices([v])):
                result = True
                break
            nb = list(h.neighbors(v))
            for a, b in combinations(nb, 2):
                if h.has_edge(a, b):
                    continue
                d = h.add_edges([(a, b)]).delete_vertices([v])
                if rec(d):
                    result = True
                    break
            if result:
                break
        memo[key] = result
        return result

    return rec(g)


# predicates -------------------------------------------------------------------


@dataclass(frozen=True)
class ClassPredicate:
    name: str
    params: tuple
    test: Callable[[Graph], bool]

    def __call__(self, g: Graph) -> bool:
        return self.test(g)

    @property
    def key(self) -> str:
        return self.name if not self.params else f"{self.name}:{','.join(map(str, self.params))}"


K5 = complete(5)
K33 = complete_bipartite(3, 3)


def is_planar(g: Graph) -> bool:
    """Planarity via the excluded minors K5 and K3,3."""
    g = _strip_isolated(g)
    if g.n <= 4:
        return True
    if g.n >= 3 and g.size > 3 * g.n - 6:
        return False
    return not has_minor(g, K5) and not has_minor(g, K33)


def kuratowski_graphs(k: int) -> list[Graph]:
    """All disjoint unions of exactly ``k`` copies of K5 or K3,3."""
    return [disjoint_union(*([K5] * j + [K33] * (k - j))) for j in range(k, -1, -1)]


def in_p_k(g: Graph, k: int) -> bool:
    """Member of the class excluding every k-Kuratowski graph as a minor."""
    return not any(has_minor(g, kg) for kg in kuratowski_graphs(k))


def is_k2h_free(g: Graph, h: int) -> bool:
    return not has_minor(g, complete(4)) and not has_minor(g, complete_bipartite(2, h))


def in_d3_star(g: Graph) -> bool:
    """Tree decomposition with a root bag whose torso has maximum degree at most 3
    and all other bags of size at most 3.

    For a candidate root set ``R`` this holds iff every component ``C`` of
    ``g - R`` has at most three attachment vertices and ``g[C + N(C)]`` with a
    clique on ``N(C)`` has treewidth at most 2.
    """
    if g.max_degree() <= 3:
        return True
    full = g.full_mask
    for r in range(g.n + 1):
        for root in combinations(range(g.n), r):
            rmask = sum(1 << v for v in root)
            ok = True
            for comp in g.component_masks(full & ~rmask):
                nb = 0
                for v in bits(comp):
                    nb |= g.adj[v]
                nb &= rmask
                if nb.bit_count() > 3:
                    ok = False
                    break
                part = g.induced_mask(comp | nb)
                verts = list(bits(comp | nb))
                local = [verts.index(x) for x in bits(nb)]
                part = part.add_edges(list(combinations(local, 2)))
                if treewidth(part) > 2:
                    ok = False
                    break
            if ok and torso(g, list(root)).max_degree() <= 3:
                return True
    return False


def _parse(name: str) -> tuple[str, tuple[int, ...]]:
    base, _, arg = name.partition(":")
    params = tuple(int(x) for x in arg.split(",")) if arg else ()
    return base, params


def predicate(name: str) -> ClassPredicate:
    """Look up a predicate by ``name`` or ``name:param``.

    Known names: planar, p_k:K, maxdeg:D, d3star, tw_le:K, edgeless, forests,
    k2h_free:H, empty, all.
    """
    base, params = _parse(name)
    table: dict[str, tuple[int, Callable[..., bool]]] = {
        "planar": (0, is_planar),
        "p_k": (1, in_p_k),
        "maxdeg": (1, lambda g, d: g.max_degree() <= d),
        "d3star": (0, in_d3_star),
        "tw_le": (1, lambda g, k: treewidth(g) <= k),
        "edgeless": (0, lambda g: g.size == 0),
        "forests": (0, lambda g: g.is_forest()),
        "k2h_free": (1, is_k2h_free),
        "empty": (0, lambda g: g.n == 0),
        "all": (0, lambda g: True),
    }
    if base not in table:
        raise ValueError(f"unknown class predicate {name!r}")
    arity, fn = table[base]
    if len(params) != arity:
        raise ValueError(f"predicate {base!r} takes {arity} parameter(s), got {len(params)}")
    return ClassPredicate(base, params, lambda g: fn(g, *params))


def class_member(g: Graph, p: ClassPredicate | str) -> bool:
    if isinstance(p, str):
        p = predicate(p)
    return p(g)


# distances ----------------------------------------------------------------------


def deletion_distance(g: Graph, p: ClassPredicate | str) -> int:
    """Fewest vertex deletions taking ``g`` into the class (subsets by increasing size)."""
    if isinstance(p, str):
        p = predicate(p)
    for k in range(g.n + 1):
        for xs in combinations(range(g.n), k):
            if p(g.delete_vertices(list(xs))):
                return k
    raise GraphError(f"no vertex subset of the graph lies in {p.key}")


_ED_CACHE: dict[tuple[bytes, str], int] = {}


def elimination_distance(g: Graph, p: ClassPredicate | str) -> int:
    """``0`` for members, maximum over components when disconnected, else ``1 + min_v ed(g - v)``."""
    if isinstance(p, str):
        p = predicate(p)
    key = (_form(g), p.key)
    if key in _ED_CACHE:
        return _ED_CACHE[key]
    if p(g):
        out = 0
    elif not g.is_connected():
        out = max(elimination_distance(g.induced_mask(c), p) for c in g.component_masks())
    else:
        out = 1 + min(elimination_distance(g.delete_vertices([v]), p) for v in g.vertices())
    _ED_CACHE[key] = out
    return out


# clique-sum closures ----------------------------------------------------------


def in_clique_sum_closure(
    g: Graph, base: Callable[[Graph], bool], s: int, memo: dict[bytes, bool] | None = None
) -> bool:
    """Membership in the closure of ``base`` under clique-sums of order at most ``s``.

    ``g`` is a member iff it lies in ``base`` or splits along a separator ``S``
    with ``|S| <= s`` into two parts, each of which (with a clique added on
    ``S``) is again a member. All separators and all bipartitions of the
    components of ``g - S`` are tried.
    """
    if memo is None:
        memo = {}
    key = _form(g)
    if key in memo:
        return memo[key]
    memo[key] = False
    result = bool(base(g))
    full = g.full_mask
    for size in range(min(s, g.n) + 1):
        if result:
            break
        for sep in combinations(range(g.n), size):
            smask = sum(1 << v for v in sep)
            comps = g.component_masks(full & ~smask)
            if len(comps) < 2:
                continue
            first, others = comps[0], comps[1:]
            for pick in range(1 << len(others)):
                if pick == (1 << len(others)) - 1:
                    continue
                side = first
                for i, c in enumerate(others):
                    if (pick >> i) & 1:
                        side |= c
                other = full & ~smask & ~side
                pieces = []
                for part in (side, other):
                    verts = list(bits(part | smask))
                    local = [verts.index(x) for x in sep]
                    pieces.append(g.induced(verts).add_edges(list(combinations(local, 2))))
                if all(in_clique_sum_closure(pc, base, s, memo) for pc in pieces):
                    result = True
                    break
            if result:
                break
    memo[key] = result
    return result


# witness constructions ---------------------------------------------------------


def build_witness(kind: str, k: int, max_order: int = 200) -> Graph:
    """``genus``: k+1 copies of K5, one vertex of each joined to a fresh vertex.
    ``hadwiger``: 2k+1 copies of K5 plus k+1 universal vertices.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if kind == "genus":
        order = 5 * (k + 1) + 1
        if order > max_order:
            raise GraphError(f"witness order {order} exceeds {max_order}")
        g = disjoint_union(*([K5] * (k + 1)), Graph.empty(1))
        x = g.n - 1
        return g.add_edges([(5 * i, x) for i in range(k + 1)])
    if kind == "hadwiger":
        order = 5 * (2 * k + 1) + k + 1
        if order > max_order:
            raise GraphError(f"witness order {order} exceeds {max_order}")
        base = disjoint_union(*([K5] * (2 * k + 1)))
        g = disjoint_union(base, Graph.empty(k + 1))
        extra = [(u, w) for u in range(base.n, g.n) for w in range(g.n) if w != u]
        g = g.add_edges([(min(a, b), max(a, b)) for a, b in extra])
        if not g.is_k_connected(k + 1):
            raise AssertionError("hadwiger witness is not (k+1)-connected")
        return g
    raise ValueError(f"unknown witness kind {kind!r}; expected 'genus' or 'hadwiger'")
