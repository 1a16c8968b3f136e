"""Constructive reductions of oddomorphisms: isolated vertices, twins, cut vertices,
separators, clique-sum decompositions and topological models of trees.

Every function re-verifies the certificate it returns with the independent
parity check in :mod:`homind.oddo`; a construction that fails re-verification
raises :class:`ReductionError` instead of returning.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .classes import has_minor
from .graph import Graph, GraphError, bits
from .homs import Homomorphism
from .linalg import F2Matrix
from .oddo import OddoCertificate, Parity, classify_parity, verify_oddomorphism


class ReductionError(GraphError):
    """A precondition failed or a constructed certificate did not re-verify."""


def _require_plain(cert: OddoCertificate) -> None:
    ok, _ = verify_oddomorphism(cert.phi)
    if not ok:
        raise ReductionError("input certificate is not a plain oddomorphism")


def _checked(phi: Homomorphism, what: str) -> OddoCertificate:
    ok, cert = verify_oddomorphism(phi)
    if not ok:
        raise ReductionError(f"{what}: constructed map is not an oddomorphism")
    return cert


def restrict_to(phi: Homomorphism, vertices: list[int]) -> Homomorphism:
    """Restriction of ``phi`` to the induced subgraph on ``vertices`` (kept in the given order)."""
    return Homomorphism(phi.source.induced(vertices), phi.target, tuple(phi.map[v] for v in vertices))


# isolated vertices and twins ----------------------------------------------------


def remove_isolated(cert: OddoCertificate, v: int) -> OddoCertificate:
    """Drop an isolated source vertex; the remaining vertices keep their order.

    The vertex must map to a target vertex with neighbours: over an isolated
    target vertex it counts as odd and cannot be removed.
    """
    _require_plain(cert)
    f, g = cert.phi.source, cert.phi.target
    if f.adj[v]:
        raise ReductionError(f"vertex {v} is not isolated")
    if not g.adj[cert.phi.map[v]]:
        raise ReductionError(f"vertex {v} lies over an isolated target vertex and is odd")
    return _checked(restrict_to(cert.phi, [a for a in f.vertices() if a != v]), "remove_isolated")


def remove_twins(cert: OddoCertificate, v: int, w: int) -> OddoCertificate:
    """Drop two vertices with equal image and equal neighbourhoods."""
    _require_plain(cert)
    f, m = cert.phi.source, cert.phi.map
    if v == w or m[v] != m[w] or f.adj[v] != f.adj[w]:
        raise ReductionError(f"{v} and {w} are not twins in the same fibre")
    return _checked(restrict_to(cert.phi, [a for a in f.vertices() if a not in (v, w)]), "remove_twins")


# cut vertices ---------------------------------------------------------------------


def _odd_mask(cert: OddoCertificate) -> int:
    return sum(1 << a for a, p in enumerate(cert.report.vertex_parity) if p is Parity.ODD)


def _fibres(phi: Homomorphism) -> list[int]:
    out = [0] * phi.target.n
    for a, x in enumerate(phi.map):
        out[x] |= 1 << a
    return out


@dataclass(frozen=True)
class CutVertexResult:
    """``vertices`` lists ``C_i`` and ``s`` in increasing order; ``cert`` uses that numbering.

    ``partner`` is a ``phi``-odd vertex outside ``C_i`` in the fibre of ``s``
    whenever ``s`` is odd for the reduced map (``s`` itself if it is
    ``phi``-odd); ``flag`` marks the case where ``s`` is ``phi``-even.
    """

    index: int
    component: tuple[int, ...]
    vertices: tuple[int, ...]
    cert: OddoCertificate
    partner: int | None
    flag: bool


def cut_vertex_reduce(cert: OddoCertificate, s: int) -> CutVertexResult:
    _require_plain(cert)
    phi = cert.phi
    f, g = phi.source, phi.target
    comps = f.component_masks(f.full_mask & ~(1 << s))
    if len(comps) < 2:
        raise ReductionError(f"{f!r} minus {s} is connected")
    xs = phi.map[s]
    if len(g.component_masks(g.full_mask & ~(1 << xs))) != 1:
        raise ReductionError("target minus the image of s must be non-empty and connected")
    odd = _odd_mask(cert)
    fibres = _fibres(phi)
    index = None
    for i, comp in enumerate(comps):
        if all((fibres[x] & comp & odd).bit_count() % 2 == 1 for x in g.vertices() if x != xs):
            index = i
            break
    if index is None:
        raise ReductionError("no component carries an odd number of odd vertices in every fibre")
    comp = comps[index]
    vertices = sorted(bits(comp | (1 << s)))
    sub = _checked(restrict_to(phi, vertices), "cut_vertex_reduce")
    pos = {a: k for k, a in enumerate(vertices)}
    for a in bits(comp):
        if (sub.report.vertex_parity[pos[a]] is Parity.ODD) != bool((odd >> a) & 1):
            raise ReductionError(f"parity of {a} changed")
    partner = None
    flag = False
    if sub.report.vertex_parity[pos[s]] is Parity.ODD:
        if (odd >> s) & 1:
            partner = s
        else:
            flag = True
            cands = fibres[xs] & odd & ~comp & ~(1 << s)
            if not cands:
                raise ReductionError("no odd partner for the cut vertex")
            partner = min(bits(cands))
    return CutVertexResult(index, tuple(bits(comp)), tuple(vertices), sub, partner, flag)


# separators -----------------------------------------------------------------------


@dataclass(frozen=True)
class SeparatorInstance:
    cert: OddoCertificate
    separator: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    target_components: tuple[tuple[int, ...], ...]
    parity: F2Matrix
    chosen: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "separator": list(self.separator),
                "components": [list(c) for c in self.components],
                "target_components": [list(d) for d in self.target_components],
                "P": self.parity.to_lists(),
                "I": list(self.chosen),
                "partition": [list(t) for t in self.partition],
            }
        )


@dataclass(frozen=True)
class SeparatorResult:
    """``labels`` names each vertex of the reduced source: a vertex of ``C`` or a separator class."""

    instance: SeparatorInstance
    cert: OddoCertificate
    labels: tuple[tuple[int, ...], ...]
    host: Graph = field(repr=False)
    minor_checked: bool = False


def _least_kernel_vector(p: F2Matrix) -> int:
    """Nonzero kernel vector whose support is lexicographically least as a sorted index tuple."""
    basis = p.nullspace()
    if not basis:
        raise ReductionError("parity matrix has trivial kernel")
    best = None
    for pick in range(1, 1 << len(basis)):
        x = 0
        for k, b in enumerate(basis):
            if (pick >> k) & 1:
                x ^= b
        key = tuple(bits(x))
        if best is None or key < best[0]:
            best = (key, x)
    return best[1]


def _edges_between(f: Graph, a_mask: int, b_mask: int) -> int:
    return sum((f.adj[a] & b_mask).bit_count() for a in bits(a_mask))


def _class_edge(f: Graph, g: Graph, m, fibres: list[int], cmask: int, t1: int, t2: int, odd_edge_rule: bool) -> bool:
    """Whether two separator classes are adjacent in the reduced source.

    With ``odd_edge_rule`` the classes are adjacent iff an odd number of edges
    joins them. That rule ignores edges into the discarded components and can
    leave a class with the wrong parity. The default rule instead fixes the
    parity of ``T`` (over ``x``) at ``1 + #odd(C ∩ φ⁻¹(x))`` directly:
    ``T ~ T'`` iff ``1 + e(X_C, Y_C) + e(X_C, T') + e(Y_C, T)`` is odd, where
    ``X_C = C ∩ φ⁻¹(x)`` and ``Y_C = C ∩ φ⁻¹(y)``. The expression is symmetric
    in ``T`` and ``T'``. The clique on the separator makes every class pair
    adjacent after contraction, so the result is still a minor of the host.
    """
    if odd_edge_rule:
        return _edges_between(f, t1, t2) % 2 == 1
    x, y = m[min(bits(t1))], m[min(bits(t2))]
    if not g.has_edge(x, y):
        return False
    xc, yc = fibres[x] & cmask, fibres[y] & cmask
    total = 1 + _edges_between(f, xc, yc) + _edges_between(f, xc, t2) + _edges_between(f, yc, t1)
    return total % 2 == 1


def separator_reduce(
    cert: OddoCertificate, separator, check_minor: bool = True, odd_edge_rule: bool = False
) -> SeparatorResult:
    """Reduce along ``separator`` to an oddomorphism from a smaller minor.

    ``odd_edge_rule`` selects the literal rule for edges between separator classes
    (see :func:`_class_edge`); it exists to demonstrate its failure cases.
    """
    _require_plain(cert)
    phi = cert.phi
    f, g = phi.source, phi.target
    sep = tuple(sorted(set(separator)))
    smask = sum(1 << a for a in sep)
    comps = f.component_masks(f.full_mask & ~smask)
    img = {phi.map[a] for a in sep}
    if any(not g.adj[x] for x in img):
        raise ReductionError("separator maps onto an isolated target vertex")
    imask = sum(1 << x for x in img)
    dcomps = g.component_masks(g.full_mask & ~imask)
    n, m = len(comps), len(dcomps)
    if n <= m:
        raise ReductionError(f"separator leaves {n} components, target side has {m}; need n > m")
    odd = _odd_mask(cert)
    fibres = _fibres(phi)
    rows = []
    for d in dcomps:
        row = None
        for x in bits(d):
            r = 0
            for i, c in enumerate(comps):
                r |= ((fibres[x] & c & odd).bit_count() & 1) << i
            if row is not None and r != row:
                raise ReductionError("parity matrix is not constant on a target component")
            row = r
        rows.append(row)
    p = F2Matrix(m, n, tuple(rows))
    ones_n, ones_m = (1 << n) - 1, (1 << m) - 1
    if p.apply(ones_n) != ones_m:
        raise ReductionError("P times the all-ones vector is not all-ones")
    kernel = _least_kernel_vector(p)
    chosen = ones_n & ~kernel
    if p.apply(chosen) != ones_m:
        raise ReductionError("chosen components do not sum to all-ones")
    cmask = 0
    for i in bits(chosen):
        cmask |= comps[i]
    for x in g.vertices():
        if not (imask >> x) & 1 and (fibres[x] & cmask & odd).bit_count() % 2 != 1:
            raise ReductionError(f"fibre {x} has an even number of odd vertices inside C")
    partition = [tuple(a for a in sep if phi.map[a] == y) for y in sorted(img)]
    cverts = list(bits(cmask))
    labels = tuple((a,) for a in cverts) + tuple(partition)
    pos = {a: k for k, a in enumerate(cverts)}
    tmasks = [sum(1 << a for a in t) for t in partition]
    edges = [(pos[u], pos[v]) for u, v in f.edges() if u in pos and v in pos]
    for a in cverts:
        for k, t in enumerate(tmasks):
            if (f.adj[a] & t).bit_count() % 2:
                edges.append((pos[a], len(cverts) + k))
    for k1, k2 in combinations(range(len(tmasks)), 2):
        if _class_edge(f, g, phi.map, fibres, cmask, tmasks[k1], tmasks[k2], odd_edge_rule):
            edges.append((len(cverts) + k1, len(cverts) + k2))
    reduced = Graph.from_edges(len(labels), edges)
    new_map = tuple(phi.map[a] for a in cverts) + tuple(phi.map[t[0]] for t in partition)
    new_cert = _checked(Homomorphism(reduced, g, new_map), "separator_reduce")
    host_vertices = sorted(bits(cmask | smask))
    host = f.induced(host_vertices)
    hpos = {a: k for k, a in enumerate(host_vertices)}
    host = host.add_edges([(hpos[a], hpos[b]) for a, b in combinations(sep, 2)])
    if check_minor and not has_minor(host, reduced):
        raise ReductionError("reduced source is not a minor of the separator host")
    instance = SeparatorInstance(
        cert,
        sep,
        tuple(tuple(bits(c)) for c in comps),
        tuple(tuple(bits(d)) for d in dcomps),
        p,
        tuple(bits(chosen)),
        tuple(partition),
    )
    return SeparatorResult(instance, new_cert, labels, host, check_minor)


# clique-sum reducer ---------------------------------------------------------------


@dataclass(frozen=True)
class CliqueSumReduction:
    rounds: tuple[tuple[str, tuple[int, ...], int], ...]
    cert: OddoCertificate
    in_family: bool | None = None


def _first_separator(f: Graph, s: int) -> tuple[int, ...] | None:
    full = f.full_mask
    for size in range(s + 1):
        for sep in combinations(range(f.n), size):
            smask = sum(1 << a for a in sep)
            if len(f.component_masks(full & ~smask)) > 1:
                return sep
    return None


def reduce_clique_sum(cert: OddoCertificate, s: int, family=None, max_rounds: int = 1000) -> CliqueSumReduction:
    """Shrink the source along separators of size at most ``s`` until none remains.

    Separators are tried by size, then lexicographically. Single cut vertices
    use :func:`cut_vertex_reduce`; everything else :func:`separator_reduce`.
    Each round is recorded as ``(kind, separator, new order)``. If ``family``
    is given (a predicate), the final source is tested against it.
    """
    _require_plain(cert)
    g = cert.phi.target
    if g.n < s + 2 or not g.is_k_connected(s + 1):
        raise ReductionError(f"target is not {s + 1}-connected")
    rounds = []
    current = cert
    for _ in range(max_rounds):
        sep = _first_separator(current.phi.source, s)
        if sep is None:
            fam = None if family is None else bool(family(current.phi.source))
            return CliqueSumReduction(tuple(rounds), current, fam)
        before = current.phi.source.n
        if len(sep) == 1:
            res = cut_vertex_reduce(current, sep[0])
            current, kind = res.cert, "cut"
        else:
            current, kind = separator_reduce(current, sep).cert, "separator"
        if current.phi.source.n >= before:
            raise ReductionError("reduction round did not decrease the order")
        rounds.append((kind, sep, current.phi.source.n))
    raise ReductionError(f"no fixpoint within {max_rounds} rounds")


# topological models of trees -------------------------------------------------------


@dataclass(frozen=True)
class TopologicalModel:
    pattern: Graph
    host: Graph
    rho: tuple[int, ...]
    paths: dict = field(hash=False)

    def verify(self) -> None:
        """Raise unless ``rho`` is injective and the paths are internally disjoint host paths."""
        if len(set(self.rho)) != len(self.rho):
            raise ReductionError("branch vertices are not distinct")
        branch = set(self.rho)
        used: set[int] = set()
        for (v, w) in self.pattern.edges():
            path = self.paths[(v, w)]
            if path[0] != self.rho[v] or path[-1] != self.rho[w]:
                raise ReductionError(f"path for {v}-{w} has wrong ends")
            if len(set(path)) != len(path):
                raise ReductionError(f"path for {v}-{w} repeats a vertex")
            for a, b in zip(path, path[1:]):
                if not self.host.has_edge(a, b):
                    raise ReductionError(f"path for {v}-{w} uses a non-edge")
            inner = set(path[1:-1])
            if inner & branch or inner & used:
                raise ReductionError(f"path for {v}-{w} is not internally disjoint")
            used |= inner


def _tree_path(f: Graph, a: int, b: int) -> list[int]:
    parent = {a: None}
    queue = [a]
    while queue:
        x = queue.pop(0)
        for y in f.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


def _tree_rho(cert: OddoCertificate) -> list[int]:
    phi = cert.phi
    f, g = phi.source, phi.target
    if g.n == 1:
        if f.n != 1:
            raise ReductionError("tree source over a single vertex must be a single vertex")
        return [0]
    v = next(x for x in g.vertices() if g.degree(x) == 1)
    fibre = [a for a in f.vertices() if phi.map[a] == v]
    big = [a for a in fibre if f.degree(a) >= 2]
    if not big:
        rest = [a for a in f.vertices() if phi.map[a] != v]
        gkeep = [x for x in g.vertices() if x != v]
        gpos = {x: k for k, x in enumerate(gkeep)}
        sub = Homomorphism(f.induced(rest), g.induced(gkeep), tuple(gpos[phi.map[a]] for a in rest))
        sub_rho = _tree_rho(_checked(sub, "leaf-fibre restriction"))
        rho = [0] * g.n
        for x in gkeep:
            rho[x] = rest[sub_rho[gpos[x]]]
        w = g.neighbors(v)[0]
        rho[v] = min(a for a in fibre if f.has_edge(a, rho[w]))
        return rho
    a = big[0]
    res = cut_vertex_reduce(cert, a)
    sub_rho = _tree_rho(res.cert)
    rho = [res.vertices[k] for k in sub_rho]
    if res.flag and rho[v] == a:
        rho[v] = res.partner
    return rho


def tree_topological_model(cert: OddoCertificate) -> TopologicalModel:
    """Topological model of the target in a tree source, with odd branch vertices in the right fibres."""
    _require_plain(cert)
    f, g = cert.phi.source, cert.phi.target
    if not f.is_tree():
        raise ReductionError("source is not a tree")
    if not g.is_tree():
        raise ReductionError("target of an oddomorphism from a tree must be a tree")
    rho = tuple(_tree_rho(cert))
    report = classify_parity(cert.phi)
    for x in g.vertices():
        if cert.phi.map[rho[x]] != x or report.vertex_parity[rho[x]] is not Parity.ODD:
            raise ReductionError(f"branch vertex of {x} is misplaced or not odd")
    paths = {(v, w): tuple(_tree_path(f, rho[v], rho[w])) for v, w in g.edges()}
    model = TopologicalModel(g, f, rho, paths)
    model.verify()
    return model
