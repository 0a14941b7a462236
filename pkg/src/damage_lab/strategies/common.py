"""Helpers shared by the concrete strategies."""

from __future__ import annotations

from functools import lru_cache

from ..engine import ValueTable, Variant, damage_result, solve_values
from ..graph import Graph, all_pairs_distance, bits, is_tree
from .base import StrategyError


@lru_cache(maxsize=64)
def factor_table(g: Graph) -> ValueTable:
    return solve_values(g)


@lru_cache(maxsize=64)
def factor_damage(g: Graph) -> tuple[int, int]:
    """(dmg, dmg') of a factor graph."""
    t = factor_table(g)
    return damage_result(t, Variant.NORMAL).value, damage_result(t, Variant.COP_PASSES_FIRST).value


@lru_cache(maxsize=256)
def distances(g: Graph) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in all_pairs_distance(g))


def step_toward(g: Graph, src: int, dst: int) -> int:
    """Lowest-index neighbour of ``src`` on a shortest path to ``dst``."""
    if src == dst:
        return src
    dist = distances(g)
    for v in bits(g.adj[src]):
        if dist[v][dst] == dist[src][dst] - 1:
            return v
    raise AssertionError("no shortest-path neighbour in a connected graph")


def require_cycle(g: Graph, min_len: int = 3) -> int:
    """Check the canonical cycle labelling i ~ i+1 (mod m); return m."""
    m = g.n
    if m < min_len:
        raise StrategyError(f"host must be a cycle on at least {min_len} vertices")
    for i in range(m):
        if g.adj[i] != (1 << (i + 1) % m) | (1 << (i - 1) % m):
            raise StrategyError(f"host {g.name or g} is not a canonically labelled cycle")
    return m


def require_product(g: Graph) -> tuple[Graph, Graph]:
    if g.factors is None:
        raise StrategyError(f"host {g.name or g} is not a Cartesian product")
    return g.factors


def require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise StrategyError(f"host {g.name or g} is not a tree")


def cyc_dist(a: int, b: int, m: int) -> int:
    d = (a - b) % m
    return min(d, m - d)


def project(damaged: int, g_n: int, h_n: int, coord: int) -> int:
    """Project a product damaged set onto one factor (coord 0 = first)."""
    out = 0
    for v in bits(damaged):
        out |= 1 << (v // h_n if coord == 0 else v % h_n)
    return out
