"""Graph corpora for sweeps: labelled enumeration, trees, graph6 files, families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .families import build_family, tree_from_parents
from .graph import Graph, radius_ecc_centers
from .graph6 import encode_graph6, read_graph6_file


@dataclass(frozen=True)
class Corpus:
    source: str
    make: Callable[[], Iterator[tuple[str, Graph]]]

    def __iter__(self) -> Iterator[tuple[str, Graph]]:
        return self.make()


def labeled_connected(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` vertices (no isomorphism reduction)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        g = Graph(n, tuple(adj))
        if g.is_connected():
            yield g


def enumeration_corpus(max_n: int, min_n: int = 1) -> Corpus:
    def make():
        for n in range(min_n, max_n + 1):
            for g in labeled_connected(n):
                yield encode_graph6(g), g
    return Corpus(f"labeled-enumeration:{min_n}..{max_n}", make)


def graph6_corpus(path: str) -> Corpus:
    def make():
        for i, g in enumerate(read_graph6_file(path), 1):
            yield f"file:{path}:{i}", g
    return Corpus(f"graph6-file:{path}", make)


def family_corpus(specs) -> Corpus:
    specs = list(specs)

    def make():
        for spec in specs:
            yield spec, build_family(spec)
    return Corpus("family:" + ",".join(specs), make)


def level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of all rooted trees on ``n`` vertices.

    Each rooted tree appears once, in decreasing lexicographic order of its
    canonical (depth-first, largest subtree first) level sequence.
    """
    if n < 1:
        return
    seq = list(range(1, n + 1))
    while True:
        yield list(seq)
        p = max((i for i in range(n) if seq[i] > 2), default=-1)
        if p < 0:
            return
        q = max(i for i in range(p) if seq[i] == seq[p] - 1)
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


def parents_from_levels(seq: list[int]) -> list[int | None]:
    parents: list[int | None] = [None]
    last_at: dict[int, int] = {seq[0]: 0}
    for i in range(1, len(seq)):
        parents.append(last_at[seq[i] - 1])
        last_at[seq[i]] = i
    return parents


def _canon(g: Graph, root: int) -> str:
    def enc(v: int, parent: int) -> str:
        return "(" + "".join(sorted(enc(u, v) for u in g.neighbors(v) if u != parent)) + ")"
    return enc(root, -1)


def tree_key(g: Graph) -> str:
    """Isomorphism invariant of a tree: least centre-rooted canonical string."""
    return min(_canon(g, c) for c in radius_ecc_centers(g)[2])


def rooted_trees(n: int) -> Iterator[Graph]:
    for seq in level_sequences(n):
        parents = parents_from_levels(seq)
        yield tree_from_parents(parents)


def unrooted_trees(n: int) -> list[Graph]:
    """One representative per isomorphism class of trees on ``n`` vertices."""
    seen: dict[str, Graph] = {}
    for t in rooted_trees(n):
        seen.setdefault(tree_key(t), t)
    return list(seen.values())


def tree_corpus(max_n: int, min_n: int = 1) -> Corpus:
    def make():
        for n in range(min_n, max_n + 1):
            for t in unrooted_trees(n):
                yield t.name, t
    return Corpus(f"trees:{min_n}..{max_n}", make)
