"""Independent reference computations used only by the tests.

Nothing here shares code with the solver beyond ``step`` and the Graph type.
"""

from __future__ import annotations

import itertools

from damage_lab.engine import GameState, Side, Terminal, step
from damage_lab.graph import Graph, popcount


def minimax(g: Graph, s: GameState, horizon: int, path: frozenset = frozenset(),
            alpha: int = -1, beta: int | None = None) -> int:
    """Horizon-bounded minimax of future damage, without memoisation.

    A state repeated on the current path scores zero further damage: within
    one damaged set the game is a reachability game, for which the first
    repetition already decides the outcome.  Alpha-beta pruning uses the
    trivial bounds 0 <= value <= n - |D|.
    """
    if beta is None:
        beta = g.n - popcount(s.damaged) + 1
    if horizon == 0 or s in path:
        return 0
    path = path | {s}
    if s.to_move is Side.COP:
        best = g.n + 1
        for t in g.closed_neighbors(s.cop):
            nxt, _ = step(g, s, t)
            v = 0 if isinstance(nxt, Terminal) else minimax(g, nxt, horizon - 1, path, alpha, min(beta, best))
            best = min(best, v)
            if best <= alpha or best == 0:
                break
        return best
    best = -1
    top = g.n - popcount(s.damaged)
    for t in g.closed_neighbors(s.robber):
        nxt, fresh = step(g, s, t)
        gain = 1 if fresh is not None else 0
        if isinstance(nxt, Terminal):
            v = gain
        else:
            v = gain + minimax(g, nxt, horizon - 1, path, max(alpha, best) - gain, beta - gain)
        best = max(best, v)
        if best >= beta or best == top:
            break
    return best


def oracle_damage(g: Graph, robber_first: bool = False) -> int:
    horizon = 2 * g.n * 2 ** g.n
    side = Side.ROBBER if robber_first else Side.COP
    vals = []
    for c in range(g.n):
        worst = 0
        for r in range(g.n):
            if r != c:
                worst = max(worst, minimax(g, GameState(0, c, r, side), horizon))
        vals.append(worst)
    return min(vals)


def value_iteration(g: Graph) -> dict:
    """Plain Jacobi value iteration from zero over every state (dict based)."""
    states = [
        GameState(d, c, r, side)
        for d in range(1 << g.n) for c in range(g.n) for r in range(g.n) if c != r
        for side in (Side.COP, Side.ROBBER)
    ]
    val = {s: 0 for s in states}
    while True:
        new = {}
        for s in states:
            opts = []
            mover = s.cop if s.to_move is Side.COP else s.robber
            for t in g.closed_neighbors(mover):
                nxt, fresh = step(g, s, t)
                gain = 1 if fresh is not None else 0
                opts.append(gain + (0 if isinstance(nxt, Terminal) else val[nxt]))
            new[s] = min(opts) if s.to_move is Side.COP else max(opts)
        if new == val:
            return val
        val = new


def vi_damage(g: Graph, robber_first: bool = False) -> int:
    val = value_iteration(g)
    side = Side.ROBBER if robber_first else Side.COP
    return min(
        max([0] + [val[GameState(0, c, r, side)] for r in range(g.n) if r != c])
        for c in range(g.n)
    )


def labeled_connected_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for choice in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if choice >> i & 1]
        if n > 1 and len(edges) < n - 1:
            continue
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            yield g
