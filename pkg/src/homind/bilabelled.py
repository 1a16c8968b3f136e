"""Bilabelled graphs, their homomorphism matrices, series-parallel terms and contractors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .canon import canonical_form
from .graph import Graph, GraphError
from .homs import DEFAULT_BUDGET, count_homs, hom_table
from .linalg import solve_rational

SP_EDGE_CAP = 8


class NoContractorFound(RuntimeError):
    """The contractor equations have no solution over the enumerated basis."""


@dataclass(frozen=True)
class BilabelledGraph:
    graph: Graph
    u: int
    v: int

    def __post_init__(self) -> None:
        if not (0 <= self.u < self.graph.n and 0 <= self.v < self.graph.n):
            raise GraphError("labels must be vertices of the graph")

    def form(self) -> bytes:
        """Canonical form of the labelled graph (labels are coloured 1 and 2, or 3 if equal)."""
        colours = [0] * self.graph.n
        colours[self.u] += 1
        colours[self.v] += 2
        return canonical_form(self.graph, colours, max_order=max(self.graph.n, 12))


A = BilabelledGraph(Graph.from_edges(2, [(0, 1)]), 0, 1)
I = BilabelledGraph(Graph.empty(1), 0, 0)
J = BilabelledGraph(Graph.empty(2), 0, 1)


def _glue(n: int, edges: list[tuple[int, int]], pairs: list[tuple[int, int]], labels: tuple[int, int]):
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(n)})
    index = {r: i for i, r in enumerate(roots)}
    out = set()
    for a, b in edges:
        x, y = index[find(a)], index[find(b)]
        if x == y:
            raise GraphError("composition would create a loop")
        out.add((min(x, y), max(x, y)))
    return BilabelledGraph(Graph.from_edges(len(roots), sorted(out)), index[find(labels[0])], index[find(labels[1])])


def parallel(s1: BilabelledGraph, s2: BilabelledGraph) -> BilabelledGraph:
    """Glue ``u1`` to ``u2`` and ``v1`` to ``v2``; duplicate edges merge."""
    n1 = s1.graph.n
    edges = s1.graph.edges() + [(a + n1, b + n1) for a, b in s2.graph.edges()]
    pairs = [(s1.u, s2.u + n1), (s1.v, s2.v + n1)]
    return _glue(n1 + s2.graph.n, edges, pairs, (s1.u, s1.v))


def series(s1: BilabelledGraph, s2: BilabelledGraph) -> BilabelledGraph:
    """Glue ``v1`` to ``u2``; the result is labelled ``(u1, v2)``."""
    n1 = s1.graph.n
    edges = s1.graph.edges() + [(a + n1, b + n1) for a, b in s2.graph.edges()]
    return _glue(n1 + s2.graph.n, edges, [(s1.v, s2.u + n1)], (s1.u, s2.v + n1))


def soe_graph(s: BilabelledGraph) -> Graph:
    return s.graph


def hom_matrix(s: BilabelledGraph, g: Graph, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``M[x, y]`` = number of homomorphisms sending ``u`` to ``x`` and ``v`` to ``y``."""
    m = np.zeros((g.n, g.n), dtype=np.int64)
    table = hom_table(s.graph, g, budget)
    np.add.at(m, (table[:, s.u].astype(np.intp), table[:, s.v].astype(np.intp)), 1)
    return m


# series-parallel terms ------------------------------------------------------------


@dataclass(frozen=True)
class SPTerm:
    """Expression over the atom ``A``: ``"A"``, ``"(x*y)"`` (series) or ``"(x&y)"`` (parallel)."""

    expr: str
    realization: BilabelledGraph = field(compare=False, repr=False)

    @property
    def edges(self) -> int:
        return self.realization.graph.size

    @classmethod
    def parse(cls, text: str) -> "SPTerm":
        return cls(text, realize(text))


def realize(expr: str) -> BilabelledGraph:
    """Fold an expression string into its bilabelled graph."""
    pos = 0

    def term() -> BilabelledGraph:
        nonlocal pos
        if expr.startswith("A", pos):
            pos += 1
            return A
        if not expr.startswith("(", pos):
            raise ValueError(f"bad series-parallel expression at offset {pos}: {expr!r}")
        pos += 1
        left = term()
        op = expr[pos : pos + 1]
        pos += 1
        right = term()
        if not expr.startswith(")", pos):
            raise ValueError(f"expected ')' at offset {pos}: {expr!r}")
        pos += 1
        if op == "*":
            return series(left, right)
        if op == "&":
            return parallel(left, right)
        raise ValueError(f"unknown operator {op!r} in {expr!r}")

    out = term()
    if pos != len(expr):
        raise ValueError(f"trailing characters in {expr!r}")
    return out


@lru_cache(maxsize=None)
def _sp_closure(max_edges: int) -> tuple[SPTerm, ...]:
    terms: dict[bytes, SPTerm] = {A.form(): SPTerm("A", A)}
    frontier = list(terms.values())
    while frontier:
        current = sorted(terms.values(), key=lambda t: (t.edges, len(t.expr), t.expr))
        new: list[SPTerm] = []
        fresh = {t.expr for t in frontier}
        for s in current:
            for t in current:
                if s.expr not in fresh and t.expr not in fresh:
                    continue
                if s.edges + t.edges > max_edges and s.edges + t.edges - 1 > max_edges:
                    continue
                for op, fn in (("*", series), ("&", parallel)):
                    r = fn(s.realization, t.realization)
                    if r.graph.size > max_edges:
                        continue
                    key = r.form()
                    if key not in terms:
                        terms[key] = SPTerm(f"({s.expr}{op}{t.expr})", r)
                        new.append(terms[key])
        frontier = new
    return tuple(sorted(terms.values(), key=lambda t: (t.edges, t.realization.form())))


def enumerate_series_parallel(max_edges: int) -> list[SPTerm]:
    """All series-parallel bilabelled graphs with at most ``max_edges`` edges, one term each.

    Ordered by edge count, then canonical form of the labelled realization.
    """
    if max_edges > SP_EDGE_CAP:
        raise ValueError(f"max_edges {max_edges} exceeds the cap {SP_EDGE_CAP}")
    if max_edges < 1:
        return []
    return list(_sp_closure(max_edges))


# contractors --------------------------------------------------------------------


@dataclass(frozen=True)
class ContractorCombination:
    terms: tuple[tuple[SPTerm, Fraction], ...]

    def to_json(self) -> str:
        return json.dumps(
            [[t.expr, c.numerator, c.denominator] for t, c in self.terms]
        )

    @classmethod
    def from_json(cls, text: str) -> "ContractorCombination":
        return cls(tuple((SPTerm.parse(e), Fraction(n, d)) for e, n, d in json.loads(text)))

    def matrix(self, g: Graph) -> list[list[Fraction]]:
        out = [[Fraction(0)] * g.n for _ in range(g.n)]
        for t, c in self.terms:
            m = hom_matrix(t.realization, g)
            for x in range(g.n):
                for y in range(g.n):
                    out[x][y] += c * int(m[x, y])
        return out

    def is_contractor_for(self, g: Graph) -> bool:
        m = self.matrix(g)
        return all(m[x][y] == (1 if x == y else 0) for x in range(g.n) for y in range(g.n))


def contractor_obstruction(g: Graph) -> str | None:
    """A structural reason why no contractor exists for ``g``, if one is visible.

    Every series-parallel term is connected and joins its labels through an
    edge or a path, so an isolated vertex gets a zero diagonal entry, and two
    non-adjacent vertices with equal neighbourhoods get equal rows in every
    term matrix; the identity has neither property.
    """
    if g.n == 0:
        return "empty graph"
    if g.isolated_vertices():
        return "isolated vertex"
    for x in g.vertices():
        for y in range(x + 1, g.n):
            if g.adj[x] == g.adj[y]:
                return "non-adjacent twins"
    return None


def solve_contractor(g: Graph, h: Graph, max_edges: int) -> ContractorCombination:
    """Rational coefficients with ``sum a_S S_G = I_G`` and ``sum a_S S_H = I_H``."""
    basis = enumerate_series_parallel(max_edges)
    if not basis or g.n == 0 or h.n == 0:
        raise NoContractorFound("empty basis or empty target")
    columns = []
    for t in basis:
        col = []
        for target in (g, h):
            col.extend(int(x) for x in hom_matrix(t.realization, target).ravel())
        columns.append(col)
    rhs = [int(x == y) for target in (g, h) for x in range(target.n) for y in range(target.n)]
    rows = [[columns[j][i] for j in range(len(basis))] for i in range(len(rhs))]
    sol = solve_rational(rows, rhs)
    if sol is None:
        raise NoContractorFound(f"no contractor over {len(basis)} series-parallel terms with <= {max_edges} edges")
    combo = ContractorCombination(tuple((t, c) for t, c in zip(basis, sol) if c != 0))
    if not (combo.is_contractor_for(g) and combo.is_contractor_for(h)):
        raise AssertionError("contractor failed re-substitution")
    return combo


def minus_edge(f: Graph, u: int, v: int) -> BilabelledGraph:
    """``F`` without the edge ``uv``, labelled at ``(u, v)``."""
    if not f.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    return BilabelledGraph(f.delete_edges([(u, v)]), u, v)


def simulate_contraction(f: Graph, e: tuple[int, int], g: Graph, alpha: ContractorCombination) -> int:
    """Number of homomorphisms from ``f / e`` to ``g``, computed through the contractor."""
    if not alpha.is_contractor_for(g):
        raise ValueError("coefficients are not a contractor for the target")
    fm = minus_edge(f, *e)
    total = Fraction(0)
    for t, c in alpha.terms:
        total += c * count_homs(soe_graph(parallel(fm, t.realization)), g, bigint=True)
    if total.denominator != 1:
        raise ValueError(f"non-integral simulated count {total}")
    return int(total)
