"""Robber strategies."""

from __future__ import annotations

from ..engine import Side, ValueTable, Variant
from ..graph import bits
from .base import Strategy, StrategyError
from .common import (
    cyc_dist,
    distances,
    factor_damage,
    factor_table,
    require_cycle,
    require_product,
)


class RobberStationary(Strategy):
    """Start on a given vertex (default: farthest from the cop) and always pass."""

    role = Side.ROBBER
    name = "stationary"
    uses_last = False

    def __init__(self, start: int | None = None):
        self.start = start

    def place(self, g, opponent, memory):
        if self.start is not None:
            return self.start
        dist = distances(g)[opponent]
        return max(range(g.n), key=lambda v: (dist[v], -v))

    def act(self, g, s, last, memory):
        return s.robber, memory


class RobberSolverOptimal(Strategy):
    role = Side.ROBBER
    name = "solver-optimal"
    uses_last = False

    def __init__(self, table: ValueTable, variant: Variant = Variant.NORMAL):
        self.table = table
        self.variant = variant

    def check_host(self, g):
        if g != self.table.graph:
            raise StrategyError("value table was solved for a different graph")

    def place(self, g, opponent, memory):
        row = self.table.root(self.variant)[opponent]
        best = max(int(x) for x in row)
        return min(r for r in range(g.n) if int(row[r]) == best and r != opponent)

    def act(self, g, s, last, memory):
        return self.table.best_robber_move(s.damaged, s.cop, s.robber), memory


class _CycleProductRobber(Strategy):
    """Shared geometry for robbers on a product of two cycles.

    Vertices are read as (x, y): x runs along the *play* cycle (length L),
    y indexes the *copy* (K copies).  The robber damages a quota of
    vertices in each copy while keeping its shadow at distance >= 2 from
    the cop's shadow on the play cycle.
    """

    role = Side.ROBBER
    uses_last = False

    def check_host(self, g):
        G, H = require_product(g)
        require_cycle(G, 4)
        require_cycle(H, 4)

    def _orient(self, g) -> int:
        """Play coordinate: 0 plays along the first factor, 1 along the second."""
        G, H = g.factors
        d_first = factor_damage(G)[0] * H.n
        d_second = factor_damage(H)[0] * G.n
        return 0 if d_first >= d_second else 1

    def _xy(self, g, v, play):
        hn = g.factors[1].n
        a, b = v // hn, v % hn
        return (a, b) if play == 0 else (b, a)

    def _vertex(self, g, x, y, play):
        hn = g.factors[1].n
        return x * hn + y if play == 0 else y * hn + x

    def _sizes(self, g, play):
        G, H = g.factors
        return (G.n, H.n) if play == 0 else (H.n, G.n)

    def _quota(self, g, play, copy, memory) -> int:
        L, _ = self._sizes(g, play)
        return (L - 1) // 2

    def _copy_count(self, g, damaged, play, copy):
        L, _ = self._sizes(g, play)
        return sum(1 for x in range(L) if damaged >> self._vertex(g, x, copy, play) & 1)

    def _play(self, g, s, play, memory):
        """One shadow-strategy move.

        Inside a copy the robber plays the cycle game against the cop's
        shadow.  Once the copy has met its quota it moves to a neighbouring
        copy that is no farther from one still owing damage.  A copy with no
        fresh vertex at shadow distance >= 2 is stale: it counts as settled
        whatever its quota, and either neighbour is allowed as an exit, which
        stops the robber from idling in a fully damaged copy.  No move ever
        lands next to the cop.
        """
        L, K = self._sizes(g, play)
        cx, cy = self._xy(g, s.cop, play)
        rx, ry = self._xy(g, s.robber, play)
        dmg = s.damaged | 1 << s.robber

        def fresh(x, y):
            return not dmg >> self._vertex(g, x, y, play) & 1

        def short(y):
            return self._copy_count(g, dmg, play, y) < self._quota(g, play, y, memory)

        steps = [x for x in ((rx + 1) % L, (rx - 1) % L) if cyc_dist(x, cx, L) >= 2]
        steps.sort(key=lambda x: (not fresh(x, ry), x != (rx + 1) % L))
        stale = not any(fresh(x, ry) for x in range(L) if cyc_dist(x, cx, L) >= 2)
        owing = [y for y in range(K) if short(y) and not (y == ry and stale)]
        d = cyc_dist(rx, cx, L)
        if (stale or not short(ry)) and owing:
            # quota met or unreachable: head for the nearest copy that still owes damage
            def gap(y):
                return min(cyc_dist(y, t, K) for t in owing)
            outs = [y for y in ((ry + 1) % K, (ry - 1) % K)
                    if d + cyc_dist(y, cy, K) >= 2
                    and (stale or (d >= 2 and gap(y) <= gap(ry)))]
            if outs:
                y = min(outs, key=lambda y: (gap(y), -cyc_dist(y, cy, K)))
                return self._vertex(g, rx, y, play)
        if d < 2:
            # the cop closed in on the shadow: step away along the play cycle
            x = steps[0] if steps else max(((rx + 1) % L, (rx - 1) % L),
                                           key=lambda x: cyc_dist(x, cx, L))
            return self._vertex(g, x, ry, play)
        # play the cycle game against the shadow inside the current copy
        proj = sum(1 << x for x in range(L) if not fresh(x, ry)) & ~(1 << rx)
        x = factor_table(g.factors[play]).best_robber_move(proj, cx, rx)
        if x == rx or cyc_dist(x, cx, L) >= 2:
            if x != rx or not short(ry) or not steps or not fresh(steps[0], ry):
                return self._vertex(g, x, ry, play)
        return self._vertex(g, steps[0], ry, play) if steps else s.robber


class RobberShadowCycleProduct(_CycleProductRobber):
    """Quota-per-copy robber for C_m x C_n (m, n >= 4).

    Starts in the cop's copy at shadow distance two, damages up to
    floor((L-1)/2) vertices of each copy while its shadow stays at distance
    at least two from the cop's, then steps to the next copy.
    """

    name = "shadow"

    def place(self, g, opponent, memory):
        play = self._orient(g)
        L, _ = self._sizes(g, play)
        cx, cy = self._xy(g, opponent, play)
        return self._vertex(g, (cx + 2) % L, cy, play)

    def act(self, g, s, last, memory):
        return self._play(g, s, self._orient(g), memory), memory


class RobberEvenProductOpening(_CycleProductRobber):
    """Opening for C_m x C_n with m, n even.

    Starts diagonally next to the cop.  The cop's first move fixes the play
    direction: if the cop changed the first coordinate, the robber plays
    along the second factor, otherwise along the first.  The starting copy
    gets a quota of L/2, later copies (L-1)//2 as for the shadow robber.
    """

    name = "even-opening"
    uses_last = True

    def check_host(self, g):
        super().check_host(g)
        G, H = g.factors
        if G.n % 2 or H.n % 2:
            raise StrategyError("even-opening needs both cycle lengths even")

    def place(self, g, opponent, memory):
        G, H = g.factors
        a, b = opponent // H.n, opponent % H.n
        return ((a + 1) % G.n) * H.n + (b + 1) % H.n

    def _quota(self, g, play, copy, memory):
        L, _ = self._sizes(g, play)
        return L // 2 if memory is not None and copy == memory[1] else (L - 1) // 2

    def act(self, g, s, last, memory):
        if memory is None:
            hn = g.factors[1].n
            changed_first = last is not None and last[0] // hn != last[1] // hn
            play = 1 if changed_first else 0
            memory = (play, self._xy(g, s.robber, play)[1])
        return self._play(g, s, memory[0], memory), memory


ROBBER_STRATEGIES = {
    "stationary": lambda g, **kw: RobberStationary(),
    "shadow": lambda g, **kw: RobberShadowCycleProduct(),
    "even-opening": lambda g, **kw: RobberEvenProductOpening(),
}
