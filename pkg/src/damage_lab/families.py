"""Graph family constructors and the descriptor mini-language.

Descriptors::

    path:n | cycle:n | complete:n | star:n | complete_bipartite:m,n
    tree:<parent list>          e.g. tree:_,0,0,1  or  tree:[_,0,0,1]
    edges:n:<u>-<v>,...         explicit edge list
    g6:<graph6 string>
    file:<path>[:<line>]        graph6 file, 1-based line (default 1)
    product:<spec>x<spec>

Cycles are labelled so that ``i ~ i+1 (mod n)``; the hub of a star is 0.
"""

from __future__ import annotations

from pathlib import Path

from .graph import MAX_VERTICES, Graph, GraphError, cartesian_product
from .graph6 import HEADER, parse_graph6


class SpecError(GraphError):
    """Malformed family descriptor."""


def _int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise SpecError(f"{what}: expected an integer, got {text!r}") from None
    if not 1 <= value <= MAX_VERTICES:
        raise SpecError(f"{what}: {value} outside [1, {MAX_VERTICES}]")
    return value


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise SpecError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle:{n}")


def complete(n: int) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)], f"complete:{n}"
    )


def star(k: int) -> Graph:
    """K_{1,k}: hub 0, leaves 1..k."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)], f"star:{k}")


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph.from_edges(
        m + n,
        [(i, m + j) for i in range(m) for j in range(n)],
        f"complete_bipartite:{m},{n}",
    )


def tree_from_parents(parents: list[int | None]) -> Graph:
    if not parents or parents[0] is not None:
        raise SpecError("parent list must start with the root marker '_'")
    edges = []
    for v, p in enumerate(parents[1:], 1):
        if p is None or not 0 <= p < v:
            raise SpecError(f"vertex {v}: parent must be an earlier vertex, got {p}")
        edges.append((p, v))
    label = ",".join("_" if p is None else str(p) for p in parents)
    return Graph.from_edges(len(parents), edges, f"tree:{label}")


def _parse_parents(body: str) -> list[int | None]:
    body = body.strip().strip("[]")
    out: list[int | None] = []
    for tok in body.split(","):
        tok = tok.strip()
        if tok in ("_", "-", ""):
            out.append(None)
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise SpecError(f"bad parent entry {tok!r}") from None
    return out


def _parse_edges(body: str) -> Graph:
    n_text, _, rest = body.partition(":")
    n = _int(n_text, "edges")
    edges = []
    for tok in filter(None, rest.split(",")):
        try:
            u, v = (int(x) for x in tok.split("-"))
        except ValueError:
            raise SpecError(f"bad edge {tok!r}") from None
        edges.append((u, v))
    return Graph.from_edges(n, edges, f"edges:{body}")


def _from_file(body: str) -> Graph:
    target, line_no = body, 1
    head, sep, tail = body.rpartition(":")
    if sep and tail.isdigit():
        target, line_no = head, int(tail)
    lines = [
        ln.strip()
        for ln in Path(target).read_text(encoding="ascii").splitlines()
        if ln.strip() and ln.strip() != HEADER
    ]
    if not 1 <= line_no <= len(lines):
        raise SpecError(f"{target} has no graph on line {line_no}")
    return parse_graph6(lines[line_no - 1], name=f"file:{body}")


def build_family(spec: str) -> Graph:
    """Build a graph from a descriptor string (see module docstring)."""
    spec = spec.strip()
    kind, sep, body = spec.partition(":")
    if not sep:
        raise SpecError(f"descriptor {spec!r} lacks a ':'")
    if kind == "product":
        return _product(body)
    if kind == "path":
        return path(_int(body, kind))
    if kind == "cycle":
        return cycle(_int(body, kind))
    if kind == "complete":
        return complete(_int(body, kind))
    if kind == "star":
        return star(_int(body, kind))
    if kind == "complete_bipartite":
        parts = body.split(",")
        if len(parts) != 2:
            raise SpecError("complete_bipartite needs m,n")
        m, n = (_int(p, kind) for p in parts)
        if m + n > MAX_VERTICES:
            raise SpecError(f"complete_bipartite:{m},{n} exceeds the vertex cap")
        return complete_bipartite(m, n)
    if kind == "tree":
        return tree_from_parents(_parse_parents(body))
    if kind == "edges":
        return _parse_edges(body)
    if kind == "g6":
        return parse_graph6(body, name=spec)
    if kind == "file":
        return _from_file(body)
    raise SpecError(f"unknown graph family {kind!r}")


def _product(body: str) -> Graph:
    # graph6 payloads may contain 'x', so try every split point.
    errors = []
    for i, ch in enumerate(body):
        if ch != "x":
            continue
        left, right = body[:i], body[i + 1 :]
        try:
            g, h = build_family(left), build_family(right)
        except GraphError as exc:
            errors.append(exc)
            continue
        prod = cartesian_product(g, h)
        return prod.relabel(f"product:{left}x{right}")
    if errors and "engine cap" in str(errors[-1]):
        raise errors[-1]
    raise SpecError(f"cannot split product descriptor {body!r} into two factors")
