"""Deterministic enumeration of small graph families and the distinguisher search."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator

from .canon import canonical_form
from .graph import Graph
from .graph6 import decode_graph6
from .graph6 import read_graph6_file
from .homs import BudgetExceeded, count_homs

KINDS = ("all-graphs", "all-connected", "trees", "planar", "user-corpus", "predicate-filtered")


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class on exactly ``n`` vertices.

    Built by attaching a new vertex to every subset of the vertices of each
    smaller representative; sorted by edge count, then canonical form.
    """
    if n == 0:
        return (Graph.empty(0),)
    seen: dict[bytes, Graph] = {}
    for base in graphs_of_order(n - 1):
        for nbhd in range(1 << (n - 1)):
            adj = [row | (((nbhd >> v) & 1) << (n - 1)) for v, row in enumerate(base.adj)]
            adj.append(nbhd)
            g = Graph(tuple(adj))
            form = canonical_form(g, max_order=16)
            if form not in seen:
                seen[form] = _canonical_rep(form)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (seen[k].size, k)))


def _canonical_rep(form: bytes) -> Graph:
    return decode_graph6(form.decode("ascii"))


@lru_cache(maxsize=None)
def trees_of_order(n: int) -> tuple[Graph, ...]:
    """Unlabelled trees on ``n`` vertices, grown leaf by leaf."""
    if n <= 0:
        return ()
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[bytes, Graph] = {}
    for base in trees_of_order(n - 1):
        for v in base.vertices():
            g = Graph(base.adj + (0,)).add_edges([(v, n - 1)])
            form = canonical_form(g, max_order=32)
            if form not in seen:
                seen[form] = _canonical_rep(form)
    return tuple(seen[k] for k in sorted(seen))


def all_graphs(max_n: int, min_n: int = 0) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from graphs_of_order(n)


def connected_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for g in all_graphs(max_n, max(min_n, 1)):
        if g.is_connected():
            yield g


@dataclass(frozen=True)
class FamilySpec:
    """A finite, bounded family of graphs enumerated in canonical order.

    ``predicate`` names a class predicate (see :func:`homind.classes.predicate`)
    and applies to every kind except ``user-corpus``; for ``planar`` it is
    implied. ``corpus`` lists graph6 files for ``user-corpus``.
    """

    kind: str
    max_n: int
    max_m: int | None = None
    predicate: str | None = None
    min_n: int = 0
    corpus: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "predicate-filtered" and not self.predicate:
            raise ValueError("predicate-filtered families need a predicate name")

    def to_json(self) -> str:
        data = {"kind": self.kind, "max_n": self.max_n, "max_m": self.max_m, "predicate": self.predicate}
        if self.min_n:
            data["min_n"] = self.min_n
        if self.corpus:
            data["corpus"] = list(self.corpus)
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str | dict) -> "FamilySpec":
        data = json.loads(text) if isinstance(text, str) else dict(text)
        corpus = tuple(data.pop("corpus", ()) or ())
        return cls(corpus=corpus, **data)

    def describe(self) -> dict:
        d = asdict(self)
        d["corpus"] = list(self.corpus)
        return d

    def __iter__(self) -> Iterator[Graph]:
        return self.enumerate()

    def enumerate(self) -> Iterator[Graph]:
        from .classes import predicate as lookup

        pred = None
        if self.kind == "planar":
            pred = lookup("planar")
        if self.predicate:
            extra = lookup(self.predicate)
            pred = extra if pred is None else _both(pred, extra)
        for g in self._base():
            if g.n < self.min_n or g.n > self.max_n:
                continue
            if self.max_m is not None and g.size > self.max_m:
                continue
            if pred is not None and not pred(g):
                continue
            yield g

    def _base(self) -> Iterator[Graph]:
        if self.kind in ("all-graphs", "planar", "predicate-filtered"):
            yield from all_graphs(self.max_n, self.min_n)
        elif self.kind == "all-connected":
            yield from connected_graphs(self.max_n, self.min_n)
        elif self.kind == "trees":
            for n in range(max(self.min_n, 1), self.max_n + 1):
                yield from trees_of_order(n)
        elif self.kind == "user-corpus":
            seen: dict[bytes, Graph] = {}
            for path in self.corpus:
                for _, g in read_graph6_file(path):
                    form = canonical_form(g, max_order=max(g.n, 12))
                    seen.setdefault(form, g)
            yield from sorted(seen.values(), key=lambda g: (g.n, g.size, canonical_form(g, max_order=max(g.n, 12))))


def _both(p, q):
    from .classes import ClassPredicate

    return ClassPredicate(f"{p.name}&{q.name}", (), lambda g: p(g) and q(g))


def find_distinguisher(
    g: Graph, h: Graph, family: FamilySpec | list[Graph], budget: int | None = None
) -> Graph | None:
    """First pattern of ``family`` whose homomorphism counts into ``g`` and ``h`` differ.

    Returns ``None`` when every enumerated pattern agrees, which certifies
    indistinguishability only up to the family's bounds. ``budget`` caps the
    number of patterns checked; exceeding it raises :class:`BudgetExceeded`
    whose ``checked`` attribute reports the progress made.
    """
    checked = 0
    for f in family:
        if budget is not None and checked >= budget:
            exc = BudgetExceeded(f"pattern budget {budget} exhausted after {checked} patterns")
            exc.checked = checked
            raise exc
        checked += 1
        if count_homs(f, g, bigint=True) != count_homs(f, h, bigint=True):
            return f
    return None


__all__ = [
    "FamilySpec",
    "all_graphs",
    "connected_graphs",
    "find_distinguisher",
    "graphs_of_order",
    "trees_of_order",
]
