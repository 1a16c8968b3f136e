"""graph6 encoding and decoding (the nauty ``graph6`` text format)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import Graph, GraphError

HEADER = ">>graph6<<"
MAX_ORDER = 68719476735


class Graph6Error(GraphError):
    """Malformed graph6 data. ``offset`` is the 0-based byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_order(n: int) -> list[int]:
    if n < 0 or n > MAX_ORDER:
        raise GraphError(f"order {n} is not encodable in graph6")
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def encode_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g``; upper-triangle bits in column order, zero padded to 6 bits."""
    out = _encode_order(g.n)
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc)
                acc = nbits = 0
    if nbits:
        out.append(acc << (6 - nbits))
    text = "".join(chr(b + 63) for b in out)
    return HEADER + text if header else text


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    start = 0
    if s.startswith(HEADER):
        start = len(HEADER)
    data = s[start:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range", start + i)
    if not data:
        raise Graph6Error("empty record", start)
    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise Graph6Error("truncated 18-bit order field", start + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
        if n <= 62:
            raise Graph6Error("order field uses the long form for a small order", start)
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
        if n <= 258047:
            raise Graph6Error("order field uses the 36-bit form for a small order", start)
    else:
        raise Graph6Error("malformed order field", start)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != expected:
        raise Graph6Error(
            f"expected {expected} data bytes for order {n}, found {len(body)}",
            start + pos + min(len(body), expected),
        )
    if nbits % 6 and body:
        pad = 6 - nbits % 6
        if body[-1] & ((1 << pad) - 1):
            raise Graph6Error("non-zero padding bits", start + pos + len(body) - 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(tuple(adj))


def read_graph6_file(path: str | Path) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)``; blank lines and ``#`` comments are skipped.

    Parse failures raise :class:`Graph6Error` with the message prefixed by ``file:line``.
    """
    path = Path(path)
    with path.open("r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                yield lineno, decode_graph6(stripped)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}", exc.offset) from exc


def write_graph6_file(path: str | Path, graphs) -> None:
    Path(path).write_text("".join(encode_graph6(g) + "\n" for g in graphs), encoding="ascii")
