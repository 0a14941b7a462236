"""graph6 encoding and decoding (McKay's format, 6-bit packing with offset 63)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import Graph, GraphError

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    raise Graph6Error(f"n={n} too large for graph6")


def encode_graph6(g: Graph) -> str:
    out = _encode_n(g.n)
    bitstream = [
        (g.adj[j] >> i) & 1 for j in range(1, g.n) for i in range(j)
    ]
    while len(bitstream) % 6:
        bitstream.append(0)
    for k in range(0, len(bitstream), 6):
        chunk = 0
        for b in bitstream[k : k + 6]:
            chunk = chunk << 1 | b
        out.append(chunk + 63)
    return bytes(out).decode("ascii")


def parse_graph6(text: str, name: str = "") -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = [ord(ch) for ch in s]
    bad = [ch for ch in s if not 63 <= ord(ch) <= 126]
    if bad:
        raise Graph6Error(f"character {bad[0]!r} outside graph6 range [63, 126]")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte size header not supported (n too large)")
        if len(data) < 4:
            raise Graph6Error("truncated size header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n <= 62:
            raise Graph6Error(f"size header mismatch: long form used for n={n}")
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n == 0:
        raise Graph6Error("graph6 string encodes the empty graph")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"bad length: n={n} needs {(nbits + 5) // 6} data bytes, got {len(body)}"
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    # padding bits must be zero
    tail = (len(body) * 6) - nbits
    if tail and body and (body[-1] - 63) & ((1 << tail) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(rows), name)


def read_graph6_file(path: str | Path) -> Iterator[Graph]:
    """Yield graphs from a graph6 file (one per line, header tolerated)."""
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line == HEADER:
                continue
            g = parse_graph6(line)
            yield g.relabel(f"g6:{encode_graph6(g)}")


def write_graph6_file(path: str | Path, graphs, header: bool = False) -> None:
    with open(path, "w", encoding="ascii") as fh:
        if header:
            fh.write(HEADER)
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
