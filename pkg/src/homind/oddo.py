"""Parity classification of homomorphisms and (weak) oddomorphism verification and search.

A source vertex ``a`` is odd (even) when it has an odd (even) number of
neighbours in every fibre adjacent to its image. When the image of ``a`` has no
neighbours the condition holds vacuously for both parities; such vertices are
reported as odd, which is the reading under which the CFI criterion holds for
the one-vertex base graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .graph import Graph, GraphError, bits
from .homs import DEFAULT_BUDGET, Homomorphism, adjacency_array, hom_table
from .linalg import gf2_solve


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class ParityReport:
    subject: Homomorphism
    vertex_parity: tuple[Parity, ...]
    fibre_odd_count: tuple[int, ...]

    def odd_vertices(self) -> list[int]:
        return [a for a, p in enumerate(self.vertex_parity) if p is Parity.ODD]

    def is_odd(self, a: int) -> bool:
        return self.vertex_parity[a] is Parity.ODD

    @property
    def is_oddomorphism(self) -> bool:
        return Parity.UNDEFINED not in self.vertex_parity and all(c % 2 == 1 for c in self.fibre_odd_count)


def classify_parity(phi: Homomorphism) -> ParityReport:
    f, g, m = phi.source, phi.target, phi.map
    fibres = [0] * g.n
    for a, x in enumerate(m):
        fibres[x] |= 1 << a
    parity = []
    for a in f.vertices():
        seen = set()
        for y in bits(g.adj[m[a]]):
            seen.add((f.adj[a] & fibres[y]).bit_count() & 1)
            if len(seen) == 2:
                break
        if seen == {0}:
            parity.append(Parity.EVEN)
        elif len(seen) == 2:
            parity.append(Parity.UNDEFINED)
        else:
            parity.append(Parity.ODD)
    counts = [0] * g.n
    for a, p in enumerate(parity):
        if p is Parity.ODD:
            counts[m[a]] += 1
    return ParityReport(phi, tuple(parity), tuple(counts))


@dataclass(frozen=True)
class OddoCertificate:
    """A homomorphism with the parity data proving it is a (weak) oddomorphism.

    For a weak certificate, ``weak_vertices`` and ``weak_edges`` (indices of the
    original source) describe the subgraph ``F'`` on which the restriction is
    an oddomorphism and ``report`` describes that restriction. For a plain
    certificate both are ``None`` and ``report`` describes ``phi`` itself.
    """

    phi: Homomorphism
    report: ParityReport
    weak_vertices: tuple[int, ...] | None = None
    weak_edges: tuple[tuple[int, int], ...] | None = None

    @property
    def source(self) -> Graph:
        return self.phi.source

    @property
    def target(self) -> Graph:
        return self.phi.target

    @property
    def is_plain(self) -> bool:
        return self.weak_vertices is None

    def weak_homomorphism(self) -> Homomorphism:
        """The restriction to ``F'`` with ``F'`` vertices renumbered in increasing order."""
        if self.weak_vertices is None:
            return self.phi
        return _restricted_hom(self.phi, self.weak_vertices, self.weak_edges or ())

    def weak_subgraph(self) -> Graph:
        return self.weak_homomorphism().source

    def odd_vertices(self) -> list[int]:
        """Odd vertices in the indexing of the original source."""
        odd = self.report.odd_vertices()
        if self.weak_vertices is None:
            return odd
        return [self.weak_vertices[i] for i in odd]

    def to_json(self) -> str:
        data = {
            "map": list(self.phi.map),
            "parity": [p.value for p in self.report.vertex_parity],
            "fibre_odd_count": list(self.report.fibre_odd_count),
            "weak_vertices": None if self.weak_vertices is None else list(self.weak_vertices),
            "weak_edges": None if self.weak_edges is None else [list(e) for e in self.weak_edges],
        }
        return json.dumps(data)


def _restricted_hom(phi: Homomorphism, vertices: Sequence[int], edges) -> Homomorphism:
    index = {v: i for i, v in enumerate(vertices)}
    sub = Graph.from_edges(len(vertices), [(index[u], index[v]) for u, v in edges])
    return Homomorphism(sub, phi.target, tuple(phi.map[v] for v in vertices))


def verify_oddomorphism(phi: Homomorphism) -> tuple[bool, OddoCertificate]:
    """Check the two parity conditions; the certificate carries the report either way."""
    report = classify_parity(phi)
    return report.is_oddomorphism, OddoCertificate(phi, report)


def is_oddomorphism(phi: Homomorphism) -> bool:
    return classify_parity(phi).is_oddomorphism


def verify_weak_oddomorphism(phi: Homomorphism) -> OddoCertificate | None:
    """Certificate for some subgraph on which ``phi`` restricts to an oddomorphism.

    Choosing the subgraph is a linear system over GF(2): one variable per source
    edge (kept or not) and one per source vertex (its parity). Every vertex
    whose image has neighbours must see, in each adjacent fibre, a number of
    kept edges congruent to its parity; every fibre must hold an odd number of
    odd vertices.
    """
    ok, cert = verify_oddomorphism(phi)
    if ok:
        return cert
    f, g, m = phi.source, phi.target, phi.map
    edges = f.edges()
    ne = len(edges)
    incident: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(edges):
        incident[(u, m[v])] = incident.get((u, m[v]), 0) | (1 << i)
        incident[(v, m[u])] = incident.get((v, m[u]), 0) | (1 << i)
    rows, rhs = [], []
    for a in f.vertices():
        for y in bits(g.adj[m[a]]):
            rows.append(incident.get((a, y), 0) | (1 << (ne + a)))
            rhs.append(0)
    for x in g.vertices():
        row = 0
        for a in f.vertices():
            if m[a] == x:
                row |= 1 << (ne + a)
        rows.append(row)
        rhs.append(1)
    sol = gf2_solve(rows, rhs, ne + f.n)
    if sol is None:
        return None
    kept = tuple(e for i, e in enumerate(edges) if (sol >> i) & 1)
    used = {v for e in kept for v in e} | {a for a in f.vertices() if (sol >> (ne + a)) & 1}
    vertices = tuple(sorted(used))
    sub = _restricted_hom(phi, vertices, kept)
    report = classify_parity(sub)
    if not report.is_oddomorphism:
        raise AssertionError("GF(2) solution failed independent re-verification")
    return OddoCertificate(phi, report, vertices, kept)


def verify_weak_oddomorphism_bruteforce(phi: Homomorphism) -> OddoCertificate | None:
    """Sweep edge subsets, then vertex subsets; reference check for small sources.

    Subgraphs whose vertex set misses a fibre are skipped, since every fibre of
    an oddomorphism contains an odd vertex.
    """
    f, g, m = phi.source, phi.target, phi.map
    edges = f.edges()
    fibre_masks = [0] * g.n
    for a, x in enumerate(m):
        fibre_masks[x] |= 1 << a
    if any(fm == 0 for fm in fibre_masks):
        return None
    for r in range(len(edges), -1, -1):
        for kept in combinations(edges, r):
            endpoints = 0
            for u, v in kept:
                endpoints |= (1 << u) | (1 << v)
            spare = [a for a in f.vertices() if not (endpoints >> a) & 1]
            for extra_r in range(len(spare) + 1):
                for extra in combinations(spare, extra_r):
                    vmask = endpoints
                    for a in extra:
                        vmask |= 1 << a
                    if any(fm & vmask == 0 for fm in fibre_masks):
                        continue
                    vertices = tuple(bits(vmask))
                    sub = _restricted_hom(phi, vertices, kept)
                    report = classify_parity(sub)
                    if report.is_oddomorphism:
                        return OddoCertificate(phi, report, vertices, tuple(kept))
    return None


# batched search ----------------------------------------------------------------


def batch_parity(f: Graph, g: Graph, table: np.ndarray, chunk: int = 65536) -> tuple[np.ndarray, np.ndarray]:
    """Per-row parity data for maps ``f -> g``: boolean arrays ``odd`` and ``defined`` of shape (rows, |F|).

    ``odd[k, a]`` holds when vertex ``a`` is odd under row ``k`` (vacuously so
    over isolated target vertices); ``defined[k, a]`` when it is odd or even.
    """
    k = table.shape[0]
    odd = np.zeros((k, f.n), dtype=bool)
    defined = np.zeros((k, f.n), dtype=bool)
    if k == 0 or f.n == 0:
        return odd, defined
    af = adjacency_array(f).astype(np.int32)
    ag = adjacency_array(g)
    targets = np.arange(g.n)
    for lo in range(0, k, chunk):
        m = table[lo : lo + chunk].astype(np.intp)
        onehot = (m[:, :, None] == targets).astype(np.int32)
        counts = np.einsum("ab,kby->kay", af, onehot)
        odd_par = (counts & 1).astype(bool)
        nb = ag[m]
        all_odd = np.all(odd_par | ~nb, axis=2)
        all_even = np.all(~odd_par | ~nb, axis=2)
        odd[lo : lo + chunk] = all_odd
        defined[lo : lo + chunk] = all_odd | all_even
    return odd, defined


def plain_mask(f: Graph, g: Graph, table: np.ndarray, chunk: int = 65536) -> np.ndarray:
    """Boolean mask of the rows of ``table`` (maps ``f -> g``) that are oddomorphisms."""
    k = table.shape[0]
    out = np.zeros(k, dtype=bool)
    if k == 0:
        return out
    targets = np.arange(g.n)
    for lo in range(0, k, chunk):
        part = table[lo : lo + chunk]
        odd, defined = batch_parity(f, g, part, chunk)
        onehot = (part.astype(np.intp)[:, :, None] == targets).astype(np.int32)
        fibre_odd = np.einsum("ka,kay->ky", odd.astype(np.int32), onehot)
        out[lo : lo + chunk] = defined.all(axis=1) & np.all(fibre_odd % 2 == 1, axis=1)
    return out


def covering_mask(f: Graph, g: Graph, table: np.ndarray) -> np.ndarray:
    """Rows that hit every vertex and every edge of ``g`` (necessary for weak oddomorphisms)."""
    k = table.shape[0]
    if k == 0:
        return np.zeros(0, dtype=bool)
    m = table.astype(np.intp)
    ok = np.ones(k, dtype=bool)
    for x in g.vertices():
        ok &= np.any(m == x, axis=1)
    gedges = g.edges()
    if gedges:
        code = -np.ones((g.n, g.n), dtype=np.intp)
        for i, (x, y) in enumerate(gedges):
            code[x, y] = code[y, x] = i
        hit = np.zeros((k, len(gedges)), dtype=bool)
        rows = np.arange(k)
        for u, v in f.edges():
            hit[rows, code[m[:, u], m[:, v]]] = True
        ok &= hit.all(axis=1)
    return ok


def iter_certificates(
    f: Graph, g: Graph, weak: bool = False, budget: int = DEFAULT_BUDGET
) -> Iterator[OddoCertificate]:
    """All (weak) oddomorphism certificates ``f -> g`` in lexicographic map order."""
    table = hom_table(f, g, budget)
    candidates = covering_mask(f, g, table)
    if not weak:
        candidates &= plain_mask(f, g, table)
    for row in table[candidates]:
        phi = Homomorphism(f, g, tuple(int(x) for x in row))
        if weak:
            cert = verify_weak_oddomorphism(phi)
            if cert is not None:
                yield cert
        else:
            ok, cert = verify_oddomorphism(phi)
            assert ok
            yield cert


def search_oddomorphism(
    f: Graph, g: Graph, weak: bool = False, budget: int = DEFAULT_BUDGET
) -> OddoCertificate | None:
    """First (weak) oddomorphism ``f -> g`` in lexicographic map order, or ``None``."""
    return next(iter_certificates(f, g, weak, budget), None)


def restrict_oddomorphism(
    cert: OddoCertificate, vertices: Sequence[int], edges: Sequence[Sequence[int]] | None = None
) -> OddoCertificate:
    """Restrict a plain certificate to the preimage of a subgraph ``G'`` of the target.

    ``G'`` has vertex set ``vertices`` and, if ``edges`` is given, only those
    edges of the target (otherwise it is induced). The source becomes the
    preimage: vertices mapped into ``G'`` and edges mapped onto edges of ``G'``.
    Both graphs are renumbered in increasing vertex order. The result is plain
    when the restricted map is an oddomorphism and weak otherwise (which can
    only happen when ``G'`` has isolated vertices).
    """
    phi = cert.phi
    f, g = phi.source, phi.target
    gv = sorted(set(vertices))
    if any(not 0 <= x < g.n for x in gv):
        raise GraphError("subgraph vertices out of range")
    gidx = {x: i for i, x in enumerate(gv)}
    if edges is None:
        gedges = {(x, y) for x, y in g.edges() if x in gidx and y in gidx}
    else:
        gedges = set()
        for x, y in edges:
            if not g.has_edge(x, y) or x not in gidx or y not in gidx:
                raise GraphError(f"{x}-{y} is not an edge of the target inside the vertex set")
            gedges.add((min(x, y), max(x, y)))
    gsub = Graph.from_edges(len(gv), [(gidx[x], gidx[y]) for x, y in gedges])
    fv = [a for a in f.vertices() if phi.map[a] in gidx]
    fidx = {a: i for i, a in enumerate(fv)}
    fedges = [
        (fidx[u], fidx[v])
        for u, v in f.edges()
        if u in fidx and v in fidx and (min(phi.map[u], phi.map[v]), max(phi.map[u], phi.map[v])) in gedges
    ]
    fsub = Graph.from_edges(len(fv), fedges)
    sub = Homomorphism(fsub, gsub, tuple(gidx[phi.map[a]] for a in fv))
    ok, out = verify_oddomorphism(sub)
    if ok:
        return out
    weak = verify_weak_oddomorphism(sub)
    if weak is None:
        raise GraphError("restriction is not even a weak oddomorphism; input certificate invalid")
    return weak
