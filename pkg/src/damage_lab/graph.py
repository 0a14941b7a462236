"""Immutable simple graphs with bitmask adjacency.

Vertices are ``0..n-1``; ``adj[v]`` is an int whose bit ``u`` is set iff
``u ~ v``.  Loops are never stored: passing is an action of the game, not
an edge.  All graph-theoretic predicates used by the solvers and checks
(distances, radius, the three domination relations, corner dismantling)
live here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised for malformed graphs or graph operations outside the engine cap."""


class DisconnectedGraphError(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: no path between {u} and {v}")
        self.pair = (u, v)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    name: str = field(default="", compare=False)
    factors: tuple["Graph", "Graph"] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside [1, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside the graph")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric edge {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), name)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighbourhood N[v] as a mask."""
        return self.adj[v] | (1 << v)

    def closed_neighbors(self, v: int) -> list[int]:
        return list(bits(self.closed(v)))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full_mask

    def require_connected(self) -> None:
        if not self.is_connected():
            dist = bfs(self, 0)
            far = next(v for v in range(self.n) if dist[v] < 0)
            raise DisconnectedGraphError(0, far)

    def relabel(self, name: str) -> "Graph":
        return Graph(self.n, self.adj, name, self.factors)

    def __repr__(self) -> str:
        label = self.name or "graph"
        return f"Graph({label}, n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class ProductVertex:
    g_coord: int
    h_coord: int
    flat: int


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product with flat index ``a * h.n + b`` for the pair (a, b)."""
    n = g.n * h.n
    if n > MAX_VERTICES:
        raise GraphError(
            f"product has {n} vertices, above the {MAX_VERTICES}-vertex engine cap"
        )
    rows = []
    for a in range(g.n):
        for b in range(h.n):
            row = 0
            for b2 in bits(h.adj[b]):
                row |= 1 << (a * h.n + b2)
            for a2 in bits(g.adj[a]):
                row |= 1 << (a2 * h.n + b)
            rows.append(row)
    name = f"product:{g.name}x{h.name}" if g.name and h.name else ""
    return Graph(n, tuple(rows), name, (g, h))


def product_vertex(flat: int, h_n: int) -> ProductVertex:
    return ProductVertex(flat // h_n, flat % h_n, flat)


def flat_index(a: int, b: int, h_n: int) -> int:
    return a * h_n + b


def bfs(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; -1 marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in bits(g.adj[v]):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def all_pairs_distance(g: Graph) -> list[list[int]]:
    rows = []
    for v in range(g.n):
        d = bfs(g, v)
        if min(d) < 0:
            raise DisconnectedGraphError(v, d.index(-1))
        rows.append(d)
    return rows


def radius_ecc_centers(g: Graph) -> tuple[int, list[int], list[int]]:
    dist = all_pairs_distance(g)
    ecc = [max(row) for row in dist]
    rad = min(ecc)
    return rad, ecc, [v for v in range(g.n) if ecc[v] == rad]


def radius(g: Graph) -> int:
    return radius_ecc_centers(g)[0]


def is_universal(g: Graph, v: int) -> bool:
    return g.degree(v) == g.n - 1


def has_universal_vertex(g: Graph) -> bool:
    return any(is_universal(g, v) for v in range(g.n))


def is_tree(g: Graph) -> bool:
    return g.is_connected() and g.num_edges == g.n - 1


# Literal subset tests; u == v is allowed.

def dominates(g: Graph, v: int, u: int) -> bool:
    """N(u) is a subset of N[v]."""
    return g.adj[u] & ~g.closed(v) == 0


def o_dominates(g: Graph, v: int, u: int) -> bool:
    """N(u) is a subset of N(v)."""
    return g.adj[u] & ~g.adj[v] == 0


def c_dominates(g: Graph, v: int, u: int) -> bool:
    """N[u] is a subset of N[v]."""
    return g.closed(u) & ~g.closed(v) == 0


def has_c_dominated_vertex(g: Graph) -> tuple[int, int] | None:
    """Return the first (u, dominator) with N[u] inside N[dominator], u != dominator."""
    for u in range(g.n):
        for v in range(g.n):
            if u != v and c_dominates(g, v, u):
                return u, v
    return None


def corner_dismantle(g: Graph) -> tuple[bool, list[int]]:
    """Greedily delete corners; a graph is copwin iff this reaches one vertex.

    Greedy order is safe: deleting a corner never destroys dismantlability.
    Returns the elimination order (lowest-index corner first).
    """
    alive = g.full_mask
    order: list[int] = []
    while popcount(alive) > 1:
        found = None
        for u in bits(alive):
            nu = g.closed(u) & alive
            for v in bits(alive & ~(1 << u)):
                if nu & ~(g.closed(v) & alive) == 0:
                    found = u
                    break
            if found is not None:
                break
        if found is None:
            return False, order
        order.append(found)
        alive &= ~(1 << found)
    return True, order
