"""Exact best response against a fixed finite-memory strategy.

The fixed side's plies are deterministic, so they are folded into the
free side's nodes: every explored node is a free-side decision point
``(damaged, cop, robber, fixed_memory)``.  Values are the least
fixed point of the same operator the table solver uses, computed group by
group (one group per damaged set, largest sets first) with a counter-based
threshold attractor that is linear in the number of edges.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..engine import BudgetExceeded, GameState, Side, Terminal, Variant, step
from ..graph import Graph, popcount
from .base import Strategy, StrategyError

UPPER = "upper-bound-on-dmg"
LOWER = "lower-bound-on-dmg"


@dataclass
class BoundCertificate:
    graph: str
    fixed_side: Side
    strategy: str
    value: int
    direction: str
    variant: Variant = Variant.NORMAL
    free_start: int | None = None  # optimal start of the free side
    fixed_start: int | None = None
    per_start: dict[int, int] = field(default_factory=dict)
    states: int = 0
    seconds: float = 0.0

    def describe(self) -> str:
        rel = ">=" if self.direction == UPPER else "<="
        what = "dmg" if self.variant is Variant.NORMAL else "dmg'"
        return (f"{self.graph}: fixed {self.fixed_side.name.lower()} '{self.strategy}' -> "
                f"best response {self.value}  ({what} {'<=' if rel == '>=' else '>='} {self.value}; "
                f"{self.states} states, {self.seconds:.2f}s)")


class _Explorer:
    def __init__(self, g: Graph, fixed: Strategy, max_states: int, cap: int | None = None):
        self.g = g
        self.cap = cap
        self.fixed = fixed
        self.fixed_side = fixed.role
        self.max_states = max_states
        self.ids: dict = {}
        self.keys: list = []
        self.edges: list[list[tuple[int, int]]] = []  # (gain, child or -1 on capture)

    def advance(self, s, mem, last, gain=0):
        """Run fixed-side plies until a free-side decision or capture."""
        g, fixed = self.g, self.fixed
        while not isinstance(s, Terminal) and s.to_move is self.fixed_side:
            target, mem2 = fixed.act(g, s, last if fixed.uses_last else None, mem)
            mover = s.cop if s.to_move is Side.COP else s.robber
            if not g.closed(mover) >> target & 1:
                raise StrategyError(f"{fixed.name} played illegal move {mover}->{target}")
            s, fresh = step(g, s, target)
            gain += fresh is not None
            mem = mem2
        return s, mem, gain

    def done(self, s) -> bool:
        return isinstance(s, Terminal) or (self.cap is not None and popcount(s.damaged) >= self.cap)

    def node(self, s: GameState, mem) -> int:
        # the fixed side only ever reacts to the free side's move on the edge
        # just taken, so 'last' is not part of the node
        key = (s.damaged, s.cop, s.robber, mem)
        nid = self.ids.get(key)
        if nid is None:
            nid = len(self.keys)
            if nid >= self.max_states:
                raise BudgetExceeded(nid + 1, self.max_states)
            self.ids[key] = nid
            self.keys.append(key)
            self.edges.append(None)
        return nid

    def explore(self, root: int) -> None:
        g = self.g
        stack = [root]
        while stack:
            nid = stack.pop()
            if self.edges[nid] is not None:
                continue
            d, c, r, mem = self.keys[nid]
            s = GameState(d, c, r, Side.COP if self.fixed_side is Side.ROBBER else Side.ROBBER)
            mover = c if s.to_move is Side.COP else r
            out = []
            for t in g.closed_neighbors(mover):
                nxt, fresh = step(g, s, t)
                gain = int(fresh is not None)
                if isinstance(nxt, Terminal):
                    out.append((gain, -1))
                    continue
                nxt, mem2, gain = self.advance(nxt, mem, (mover, t), gain)
                if self.done(nxt):
                    out.append((gain, -1))
                    continue
                child = self.node(nxt, mem2)
                out.append((gain, child))
                if self.edges[child] is None:
                    stack.append(child)
            self.edges[nid] = out


def _solve(ex: _Explorer) -> list[int]:
    """Least fixed point over the explored free-side graph."""
    n_nodes = len(ex.keys)
    maximize = ex.fixed_side is Side.COP
    groups: dict[int, list[int]] = {}
    for nid, key in enumerate(ex.keys):
        groups.setdefault(key[0], []).append(nid)
    value = [0] * n_nodes
    big = 1 << 30
    for d in sorted(groups, key=popcount, reverse=True):
        members = groups[d]
        top = ex.g.n - popcount(d)
        exit_val = {}
        counter = {}
        preds: dict[int, list[int]] = {}
        for u in members:
            best = -1 if maximize else big
            inner = 0
            for gain, child in ex.edges[u]:
                if child >= 0 and ex.keys[child][0] == d:
                    preds.setdefault(child, []).append(u)
                    inner += 1
                    continue
                v = gain + (value[child] if child >= 0 else 0)
                best = max(best, v) if maximize else min(best, v)
            exit_val[u] = best
            counter[u] = inner
        buckets: dict[int, list[int]] = {}
        for u in members:
            e = exit_val[u]
            if maximize and e >= 1:
                buckets.setdefault(e, []).append(u)
            elif not maximize and counter[u] == 0 and 1 <= e < big:
                buckets.setdefault(e, []).append(u)
        won = set()
        for k in range(top, 0, -1):
            queue = []
            for u in buckets.get(k, ()):
                if u not in won:
                    won.add(u)
                    value[u] = k
                    queue.append(u)
            while queue:
                u = queue.pop()
                for p in preds.get(u, ()):
                    if p in won:
                        continue
                    if maximize:
                        won.add(p)
                        value[p] = k
                        queue.append(p)
                    else:
                        counter[p] -= 1
                        if counter[p] == 0:
                            e = exit_val[p]
                            if e >= k:
                                won.add(p)
                                value[p] = k
                                queue.append(p)
                            elif e >= 1:
                                buckets.setdefault(e, []).append(p)
    return value


def best_response(g: Graph, fixed: Strategy, *, variant: Variant = Variant.NORMAL,
                  robber_starts=None, cop_starts=None, cop_start: int | None = None,
                  max_states: int = 10**8, cap: int | None = None) -> BoundCertificate:
    """Exact optimum of the free side against ``fixed``.

    With ``cap`` the payoff is clamped to ``min(damage, cap)``: states that
    already hold ``cap`` damaged vertices become leaves, and the reported
    value is ``min(optimum, cap)``.  Clamping is monotone, so this is exact
    for deciding whether the optimum reaches ``cap``.

    ``robber_starts``: optional callable ``cop_start -> iterable`` restricting
    the robber's placement (fixed cop).  ``cop_starts``: optional iterable
    restricting the cop's placement (fixed robber).  ``cop_start`` overrides
    a fixed cop's own placement rule.
    """
    t0 = time.perf_counter()
    g.require_connected()
    fixed.check_host(g)
    ex = _Explorer(g, fixed, max_states, cap)
    mem0 = fixed.initial_memory(g)
    first = Side.ROBBER if variant is Variant.COP_PASSES_FIRST else Side.COP
    roots = []  # (placement, prefix gain, node id or None)
    if fixed.role is Side.COP:
        c0 = fixed.place(g, None, mem0) if cop_start is None else cop_start
        starts = robber_starts(c0) if robber_starts else range(g.n)
        for r in starts:
            if r == c0:
                roots.append((r, 0, None))
                continue
            s, mem, gain = ex.advance(GameState(0, c0, r, first), mem0, None)
            nid = None if ex.done(s) else ex.node(s, mem)
            roots.append((r, gain, nid))
    else:
        for c in (cop_starts if cop_starts is not None else range(g.n)):
            r = fixed.place(g, c, mem0)
            if r == c:
                roots.append((c, 0, None))
                continue
            s, mem, gain = ex.advance(GameState(0, c, r, first), mem0, None)
            nid = None if ex.done(s) else ex.node(s, mem)
            roots.append((c, gain, nid))
    for _, _, nid in roots:
        if nid is not None:
            ex.explore(nid)
    value = _solve(ex)
    per_start = {p: gain + (value[nid] if nid is not None else 0) for p, gain, nid in roots}
    if fixed.role is Side.COP:
        best = max(per_start.values())
        free = min(p for p, v in per_start.items() if v == best)
        direction, fixed_start = UPPER, c0
    else:
        best = min(per_start.values())
        free = min(p for p, v in per_start.items() if v == best)
        direction, fixed_start = LOWER, None
    return BoundCertificate(g.name, fixed.role, fixed.name, best, direction, variant,
                            free, fixed_start, per_start, len(ex.keys),
                            time.perf_counter() - t0)
