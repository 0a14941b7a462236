"""Exact game semantics and the layered least-fixed-point damage solver.

A state is ``(damaged, cop, robber, to_move)``.  With the cop to move the
cop steps to ``c' in N[c]`` (capture if ``c' == r``); with the robber to move
the robber damages its current vertex and steps to ``r' in N[r]`` (capture
if ``r' == c``, after the damage).  The value of a state is the number of
further vertices the robber can force to become damaged:

    V(D,c,r,Robber) = max_{r' in N[r]} [r not in D] + (0 if r' == c else V(D+r, c, r', Cop))
    V(D,c,r,Cop)    = min_{c' in N[c]} (0 if c' == r else V(D, c', r, Robber))

and the solver returns the least fixed point (plays that never damage
anything new are worth zero).  Every damage-gaining transition grows ``D``,
so layers are solved in decreasing ``|D|``; inside a layer the game is a
zero-reward reachability game towards the layer's exits, iterated from zero.

The table stores, per layer, two uint8 arrays of shape ``(L, n, n)`` indexed
``[rank(D), cop, robber]``.  The diagonal (cop on robber) is pinned to zero,
which encodes capture without any masking.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import IntEnum
from math import comb

import numpy as np

from .graph import Graph, GraphError, bits, popcount

logger = logging.getLogger(__name__)

SOLVER_VERSION = "1"
DEFAULT_MAX_STATES = 1 << 26


class Side(IntEnum):
    COP = 0
    ROBBER = 1


class Variant(IntEnum):
    NORMAL = 0
    COP_PASSES_FIRST = 1


class BudgetExceeded(RuntimeError):
    """The requested solve would exceed the configured state budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"solver needs {needed} states, budget is {budget}")
        self.needed = needed
        self.budget = budget


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class GameState:
    damaged: int
    cop: int
    robber: int
    to_move: Side

    def __post_init__(self) -> None:
        if self.cop == self.robber:
            raise ValueError("cop and robber coincide: that is a capture, not a state")


@dataclass(frozen=True)
class Terminal:
    """Capture.  ``damaged`` is the final damaged set."""

    damaged: int
    cop: int


def step(g: Graph, s: GameState, target: int) -> tuple[GameState | Terminal, int | None]:
    """Apply one action.  Returns the successor and the newly damaged vertex (or None)."""
    if s.to_move is Side.COP:
        if not g.closed(s.cop) >> target & 1:
            raise IllegalMove(f"cop cannot move {s.cop} -> {target}")
        if target == s.robber:
            return Terminal(s.damaged, target), None
        return GameState(s.damaged, target, s.robber, Side.ROBBER), None
    if not g.closed(s.robber) >> target & 1:
        raise IllegalMove(f"robber cannot move {s.robber} -> {target}")
    fresh = None if s.damaged >> s.robber & 1 else s.robber
    damaged = s.damaged | (1 << s.robber)
    if target == s.cop:
        return Terminal(damaged, s.cop), fresh
    return GameState(damaged, s.cop, target, Side.COP), fresh


def table_states(n: int, cap: int | None = None) -> int:
    if cap is None or cap > n:
        return 2 * (1 << n) * n * n
    return 2 * sum(comb(n, k) for k in range(cap)) * n * n


def _layer_masks(n: int) -> tuple[list[np.ndarray], np.ndarray]:
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc += (masks >> b) & 1
    order = np.argsort(pc, kind="stable")
    layers = []
    rank = np.empty(1 << n, dtype=np.int64)
    start = 0
    for k in range(n + 1):
        count = int(np.sum(pc == k))
        layer = masks[order[start : start + count]]
        rank[layer] = np.arange(count)
        layers.append(layer)
        start += count
    return layers, rank


def _padded_closed(g: Graph) -> np.ndarray:
    """Closed neighbourhoods padded by repeating the vertex itself."""
    rows = [g.closed_neighbors(v) for v in range(g.n)]
    width = max(len(r) for r in rows)
    return np.array([r + [v] * (width - len(r)) for v, r in enumerate(rows)], dtype=np.int64)


@dataclass
class SolveStats:
    states: int = 0
    sweeps: int = 0
    seconds: float = 0.0


class ValueTable:
    """Solved values for every state of one graph.

    ``cop[k][i, c, r]`` / ``rob[k][i, c, r]`` hold V for the ``i``-th damaged
    set of size ``k`` with the cop / robber to move.  A table solved with a
    ``cap`` holds ``min(V, cap - k)`` and has no layers from ``cap`` up.
    """

    def __init__(self, g: Graph, layers, rank, cop, rob, stats: SolveStats,
                 cap: int | None = None):
        self.graph = g
        self.cap = cap
        self.layer_masks = layers
        self.rank = rank
        self.cop = cop
        self.rob = rob
        self.stats = stats
        self._ranks: dict[int, np.ndarray] = {}

    def value(self, damaged: int, cop: int, robber: int, to_move: Side) -> int:
        if cop == robber:
            return 0
        k = popcount(damaged)
        if self.cap is not None and k >= self.cap:
            return 0
        arrays = self.cop if to_move is Side.COP else self.rob
        if arrays[k] is None:
            raise KeyError(f"layer {k} was released")
        return int(arrays[k][self.rank[damaged], cop, robber])

    def state_value(self, s: GameState) -> int:
        return self.value(s.damaged, s.cop, s.robber, s.to_move)

    def _progress(self, damaged: int) -> np.ndarray:
        """Cop-to-move progress ranks inside one damaged set.

        ``rank[c, r]`` bounds the robber moves needed, against any cop reply
        that keeps the value, to reach a state that damages a new vertex (or
        one of higher value).  Value-greedy robber play that ignores ranks
        can stall forever on ties; greedy play that descends ranks realises
        the least-fixed-point value.
        """
        cached = self._ranks.get(damaged)
        if cached is not None:
            return cached
        g = self.graph
        n = g.n
        copv = [[self.value(damaged, c, r, Side.COP) for r in range(n)] for c in range(n)]
        robv = [[self.value(damaged, c, r, Side.ROBBER) for r in range(n)] for c in range(n)]
        inf = 4 * n * n + 1
        rob_rank = [[0 if (c == r or not damaged >> r & 1 or robv[c][r] == 0) else inf
                     for r in range(n)] for c in range(n)]
        cop_rank = [[inf] * n for _ in range(n)]
        nbrs = [g.closed_neighbors(v) for v in range(n)]
        changed = True
        while changed:
            changed = False
            for c in range(n):
                for r in range(n):
                    if c == r:
                        continue
                    v = copv[c][r]
                    if v == 0:
                        best = 0
                    else:
                        best = max((0 if robv[t][r] > v else rob_rank[t][r])
                                   for t in nbrs[c] if t != r)
                    if best < cop_rank[c][r]:
                        cop_rank[c][r] = best
                        changed = True
            for c in range(n):
                for r in range(n):
                    if rob_rank[c][r] == 0:
                        continue
                    v = robv[c][r]
                    best = min((cop_rank[c][t] for t in nbrs[r] if t != c and copv[c][t] == v),
                               default=inf)
                    if best + 1 < rob_rank[c][r]:
                        rob_rank[c][r] = best + 1
                        changed = True
        out = np.array(cop_rank)
        self._ranks[damaged] = out
        return out

    def best_robber_move(self, damaged: int, cop: int, robber: int) -> int:
        """Argmax robber target; ties go to the move closest to new damage, then lowest index."""
        g = self.graph
        nd = damaged | (1 << robber)
        cands = []
        for t in g.closed_neighbors(robber):
            v = 0 if t == cop else self.value(nd, cop, t, Side.COP)
            cands.append((v, t))
        top = max(v for v, _ in cands)
        best = [t for v, t in cands if v == top]
        if len(best) == 1 or top == 0:
            return best[0]
        ranks = self._progress(nd)
        return min(best, key=lambda t: (int(ranks[cop, t]), t))

    def best_cop_move(self, damaged: int, cop: int, robber: int) -> int:
        """Argmin cop target, lowest index on ties (capture is always chosen when legal)."""
        g = self.graph
        best, best_v = cop, None
        for t in g.closed_neighbors(cop):
            v = 0 if t == robber else self.value(damaged, t, robber, Side.ROBBER)
            if best_v is None or v < best_v:
                best, best_v = t, v
        if g.closed(cop) >> robber & 1:
            return robber
        return best

    def root(self, variant: Variant) -> np.ndarray:
        """Matrix ``[cop_start, robber_start]`` of root values for the variant."""
        arr = self.cop[0] if variant is Variant.NORMAL else self.rob[0]
        return arr[0]


def solve_values(
    g: Graph,
    max_states: int = DEFAULT_MAX_STATES,
    keep_layers: bool = True,
    cap: int | None = None,
) -> ValueTable:
    """Solve every state of ``g``.  Raises BudgetExceeded instead of guessing.

    With ``cap`` the payoff is clamped to ``min(damage, cap)``: only layers
    with fewer than ``cap`` damaged vertices are built, and root values are
    ``min(V, cap)``.  Clamping is monotone, so ``dmg >= cap`` is decided exactly.
    """
    g.require_connected()
    n = g.n
    if cap is not None and cap > n:
        cap = None
    need = table_states(n, cap)
    if need > max_states:
        raise BudgetExceeded(need, max_states)
    t0 = time.perf_counter()
    layers, rank = _layer_masks(n)
    nbr = _padded_closed(g)
    closed_lists = [g.closed_neighbors(v) for v in range(n)]
    diag = np.arange(n)
    stats = SolveStats(states=need)
    cop_layers: list[np.ndarray | None] = [None] * (n + 1)
    rob_layers: list[np.ndarray | None] = [None] * (n + 1)
    top = n if cap is None else cap
    cop_layers[top] = np.zeros((len(layers[top]), n, n), dtype=np.uint8)
    rob_layers[top] = np.zeros((len(layers[top]), n, n), dtype=np.uint8)

    for k in range(top - 1, -1, -1):
        masks = layers[k]
        size = len(masks)
        nxt_cop = cop_layers[k + 1]
        in_d = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)  # (L, r)
        exits = np.zeros((size, n, n), dtype=np.uint8)
        for r in range(n):
            sel = np.nonzero(~in_d[:, r])[0]
            if sel.size == 0:
                continue
            nxt = nxt_cop[rank[masks[sel] | (1 << r)]]
            exits[sel, :, r] = nxt[:, :, closed_lists[r]].max(axis=2) + 1
        exits[:, diag, diag] = 0
        in_d3 = in_d[:, None, :]

        rob = exits.copy()
        while True:
            stats.sweeps += 1
            # cop: min over c' in N[c] of rob[l, c', r]; rob[l, r, r] == 0 encodes capture
            cop = rob[:, nbr, :].min(axis=2)
            # robber on a damaged vertex: max over r' in N[r] of cop[l, c, r']
            inner = cop[:, :, nbr].max(axis=3)
            new_rob = np.where(in_d3, inner, exits)
            new_rob[:, diag, diag] = 0
            if np.array_equal(new_rob, rob):
                break
            rob = new_rob
        cop_layers[k] = cop
        rob_layers[k] = rob
        if (not keep_layers and k + 1 < n) or k + 1 == cap:
            cop_layers[k + 1] = rob_layers[k + 1] = None

    stats.seconds = time.perf_counter() - t0
    logger.debug("solved %s: %d sweeps in %.3fs", g.name, stats.sweeps, stats.seconds)
    return ValueTable(g, layers, rank, cop_layers, rob_layers, stats, cap)


def apply_bellman(table: ValueTable) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """One application of the Bellman operator to every stored layer (for soundness checks)."""
    g = table.graph
    n = g.n
    out_cop, out_rob = [], []
    for k in range(n + 1):
        cop_k, rob_k = table.cop[k], table.rob[k]
        masks = table.layer_masks[k]
        new_cop = np.zeros_like(cop_k)
        new_rob = np.zeros_like(rob_k)
        for i, d in enumerate(masks.tolist()):
            for c in range(n):
                for r in range(n):
                    if c == r:
                        continue
                    new_cop[i, c, r] = min(
                        0 if t == r else rob_k[i, t, r] for t in g.closed_neighbors(c)
                    )
                    gain = 0 if d >> r & 1 else 1
                    nd = d | (1 << r)
                    nxt = table.cop[popcount(nd)]
                    j = table.rank[nd]
                    new_rob[i, c, r] = gain + max(
                        0 if t == c else nxt[j, c, t] for t in g.closed_neighbors(r)
                    )
        out_cop.append(new_cop)
        out_rob.append(new_rob)
    return out_cop, out_rob


@dataclass
class DamageResult:
    value: int
    best_cop_starts: list[int]
    witness_robber_start: dict[int, int]
    variant: Variant
    per_start: list[int] = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)


def _result_from_root(root: np.ndarray, variant: Variant, stats: SolveStats,
                      allowed=None) -> DamageResult:
    n = root.shape[0]
    per_start = []
    witness = {}
    for c in range(n):
        cands = range(n) if allowed is None else allowed(c)
        best_r, best_v = c, -1
        for r in cands:
            v = int(root[c, r]) if r != c else 0
            if v > best_v:
                best_r, best_v = r, v
        if best_v < 0:
            raise ValueError(f"no allowed robber start against cop start {c}")
        per_start.append(best_v)
        witness[c] = best_r
    value = min(per_start)
    starts = [c for c in range(n) if per_start[c] == value]
    return DamageResult(value, starts, witness, variant, per_start, stats)


def damage_result(table: ValueTable, variant: Variant = Variant.NORMAL) -> DamageResult:
    return _result_from_root(table.root(variant), variant, table.stats)


def damage_number(g: Graph, max_states: int = DEFAULT_MAX_STATES,
                  table: ValueTable | None = None) -> DamageResult:
    table = table or solve_values(g, max_states)
    return damage_result(table, Variant.NORMAL)


def damage_number_prime(g: Graph, max_states: int = DEFAULT_MAX_STATES,
                        table: ValueTable | None = None) -> DamageResult:
    """Damage number when the cop's first action is a forced pass."""
    table = table or solve_values(g, max_states)
    res = damage_result(table, Variant.COP_PASSES_FIRST)
    normal = damage_result(table, Variant.NORMAL).value
    if res.value not in (normal, normal + 1):
        raise AssertionError(f"dmg'={res.value} outside {{dmg, dmg+1}} with dmg={normal}")
    return res


def damage_given_start(g: Graph, cop_start: int, table: ValueTable | None = None,
                       variant: Variant = Variant.NORMAL) -> tuple[int, int]:
    """Best robber reply to a fixed cop start: (value, lowest-index argmax robber start)."""
    table = table or solve_values(g)
    res = _result_from_root(table.root(variant), variant, table.stats)
    return res.per_start[cop_start], res.witness_robber_start[cop_start]


def damage_number_restricted(g: Graph, allowed_robber_starts, variant: Variant = Variant.NORMAL,
                             table: ValueTable | None = None) -> int:
    """min over cop starts of max over allowed robber starts.

    ``allowed_robber_starts`` is either a fixed iterable of vertices or a
    callable ``cop_start -> iterable`` (e.g. "not adjacent to the cop").
    """
    table = table or solve_values(g)
    if callable(allowed_robber_starts):
        allowed = allowed_robber_starts
    else:
        fixed = list(allowed_robber_starts)
        if not fixed:
            raise ValueError("allowed robber start set is empty")
        allowed = lambda c: fixed  # noqa: E731
    return _result_from_root(table.root(variant), variant, table.stats, allowed).value


def not_adjacent_to_cop(g: Graph):
    """Allowed-start rule: robber starts outside N[cop]."""
    return lambda c: [r for r in range(g.n) if not g.closed(c) >> r & 1]


# -- capture time -----------------------------------------------------------

INF = float("inf")


@dataclass
class CaptureResult:
    value: float
    table: list[list[float]]  # capt(u; v): cop starts u, robber starts v, cop moves first
    best_cop_starts: list[int]


def capture_time(g: Graph) -> CaptureResult:
    """Optimal capture time by backward induction on 'captured within k rounds'."""
    g.require_connected()
    n = g.n
    rel = [[INF] * n for _ in range(n)]
    won = [0] * n  # won[c]: robber positions r with (c, r) captured within k rounds
    for c in range(n):
        rel[c][c] = 0
        won[c] = 1 << c
    k = 0
    changed = True
    while changed:
        k += 1
        changed = False
        new_won = list(won)
        for c in range(n):
            for r in bits(g.full_mask & ~won[c]):
                for c2 in g.closed_neighbors(c):
                    # after the cop moves to c2, every robber reply must land in won[c2]
                    if c2 == r or all(
                        r2 == c2 or won[c2] >> r2 & 1 for r2 in g.closed_neighbors(r)
                    ):
                        new_won[c] |= 1 << r
                        rel[c][r] = k
                        changed = True
                        break
        won = new_won
    per_start = [max(row) for row in rel]
    value = min(per_start)
    return CaptureResult(value, rel, [c for c in range(n) if per_start[c] == value])


def relative_capture_time(g: Graph, cop_start: int, robber_start: int) -> float:
    return capture_time(g).table[cop_start][robber_start]


@dataclass
class CheckOutcome:
    status: str  # "pass" | "fail" | "skipped"
    detail: str
    values: dict = field(default_factory=dict)


def assert_damage_capt_bound(g: Graph, table: ValueTable | None = None) -> CheckOutcome:
    capt = capture_time(g).value
    if capt == INF:
        return CheckOutcome("skipped", "not copwin: the bound is meaningless", {"capt": "inf"})
    if g.n == 1:
        return CheckOutcome("skipped", "single vertex: capture at placement", {"capt": 0})
    dmg = damage_number(g, table=table).value
    ok = dmg <= capt - 1
    return CheckOutcome("pass" if ok else "fail", f"dmg={dmg} <= capt-1={int(capt) - 1}",
                        {"dmg": dmg, "capt": int(capt)})
