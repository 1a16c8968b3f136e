from __future__ import annotations

import pytest

from homind.corpus import ingest_corpus, load_corpus
from homind.graph6 import Graph6Error


def test_dedupe_and_idempotence(tmp_path):
    src = tmp_path / "in.g6"
    # K2 written with two labellings, a path, and a triangle
    src.write_text("A_\nA_\nBg\nBW\nBw\n")
    root = tmp_path / "corpus"
    first = ingest_corpus([src], root)
    index = (root / "index.json").read_text()
    assert len(first) == 3
    second = ingest_corpus([src], root)
    assert (root / "index.json").read_text() == index
    assert [e.graph6 for e in second.entries] == [e.graph6 for e in first.entries]
    assert len(list((root / "graphs").glob("*.g6"))) == 3
    assert load_corpus(root).entries == second.entries


def test_relabelled_edge_is_one_graph(tmp_path):
    src = tmp_path / "k2.g6"
    src.write_text("A_\n")
    other = tmp_path / "k2b.g6"
    other.write_text(">>graph6<<A_\n")
    corpus = ingest_corpus([src, other], tmp_path / "c")
    assert len(corpus) == 1
    assert len(corpus.entries[0].sources) == 2


def test_parse_error_names_the_line(tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("A_\n~~~~\n")
    with pytest.raises(Graph6Error, match=r"bad\.g6:2"):
        ingest_corpus([bad], tmp_path / "c")
    assert not (tmp_path / "c" / "index.json").exists()
