"""On-disk graph corpora: graph6 records deduplicated by canonical form.

Layout::

    <root>/index.json        schema version plus one entry per graph
    <root>/graphs/<id>.g6    the canonical representative of each entry
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .canon import canonical_form
from .graph import Graph
from .graph6 import decode_graph6, encode_graph6, read_graph6_file

CORPUS_SCHEMA = 1


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    graph6: str
    order: int
    size: int
    sources: tuple[str, ...]

    @property
    def graph(self) -> Graph:
        return decode_graph6(self.graph6)


@dataclass(frozen=True)
class Corpus:
    root: Path
    entries: tuple[CorpusEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def graphs(self) -> list[Graph]:
        return [e.graph for e in self.entries]


def _canonical_g6(g: Graph) -> str:
    return canonical_form(g, max_order=max(g.n, 12)).decode("ascii")


def load_corpus(root: str | Path) -> Corpus:
    root = Path(root)
    index = root / "index.json"
    if not index.exists():
        return Corpus(root, ())
    data = json.loads(index.read_text())
    if data.get("schema_version") != CORPUS_SCHEMA:
        raise ValueError(f"{index}: unsupported corpus schema {data.get('schema_version')!r}")
    entries = tuple(
        CorpusEntry(e["id"], e["graph6"], e["order"], e["size"], tuple(e["sources"])) for e in data["entries"]
    )
    return Corpus(root, entries)


def ingest_corpus(paths: Iterable[str | Path], root: str | Path) -> Corpus:
    """Merge the graphs of ``paths`` into the corpus at ``root`` and rewrite it.

    Parse errors propagate as :class:`~homind.graph6.Graph6Error` naming the
    offending file and line; nothing is written in that case.
    """
    root = Path(root)
    existing = load_corpus(root)
    by_form: dict[str, set[str]] = {e.graph6: set(e.sources) for e in existing.entries}
    for path in paths:
        for lineno, g in read_graph6_file(path):
            by_form.setdefault(_canonical_g6(g), set()).add(f"{path}:{lineno}")
    ordered = sorted(by_form, key=lambda k: (decode_graph6(k).n, decode_graph6(k).size, k))
    entries = []
    for i, form in enumerate(ordered):
        g = decode_graph6(form)
        entries.append(CorpusEntry(f"{i:06d}", form, g.n, g.size, tuple(sorted(by_form[form]))))
    graphs_dir = root / "graphs"
    graphs_dir.mkdir(parents=True, exist_ok=True)
    for old in graphs_dir.glob("*.g6"):
        old.unlink()
    for e in entries:
        (graphs_dir / f"{e.id}.g6").write_text(encode_graph6(e.graph) + "\n")
    index = {
        "schema_version": CORPUS_SCHEMA,
        "count": len(entries),
        "entries": [
            {"id": e.id, "graph6": e.graph6, "order": e.order, "size": e.size, "sources": list(e.sources)}
            for e in entries
        ],
    }
    (root / "index.json").write_text(json.dumps(index, indent=1) + "\n")
    return Corpus(root, tuple(entries))
