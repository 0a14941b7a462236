"""Cop strategies."""

from __future__ import annotations

from typing import Callable

from ..engine import GameState, Side, ValueTable, Variant, damage_result
from ..graph import Graph, radius_ecc_centers
from .base import Move, Strategy, StrategyError
from .common import (
    distances,
    factor_damage,
    factor_table,
    project,
    require_cycle,
    require_product,
    require_tree,
    step_toward,
)

# A factor policy maps (projected damage, cop coord, robber coord) to the cop's next coord.
FactorPolicy = Callable[[int, int, int], int]


def _adjacent_or_same(g: Graph, a: int, b: int) -> bool:
    return bool(g.closed(a) >> b & 1)


class CopStationary(Strategy):
    """Pass forever; capture the robber whenever it is adjacent."""

    role = Side.COP
    name = "stationary"
    uses_last = False

    def __init__(self, start: int = 0):
        self.start = start

    def place(self, g, opponent, memory):
        return self.start

    def act(self, g, s, last, memory):
        if _adjacent_or_same(g, s.cop, s.robber):
            return s.robber, memory
        return s.cop, memory


class CopCycleOpposition(Strategy):
    """Answer each robber step on a cycle with a step in the opposite direction.

    A robber pass is answered by a pass (or a capture when adjacent).  With
    ``initial_pass`` the cop's first action is a pass; otherwise the first
    action steps towards the robber.
    """

    role = Side.COP

    def __init__(self, initial_pass: bool = False, start: int = 0):
        self.initial_pass = initial_pass
        self.start = start
        self.name = "cycle-opposition" + ("+pass" if initial_pass else "")

    def check_host(self, g):
        require_cycle(g)

    def place(self, g, opponent, memory):
        return self.start

    def act(self, g, s, last, memory):
        m = g.n
        if _adjacent_or_same(g, s.cop, s.robber):
            return s.robber, memory
        if last is None:
            if self.initial_pass:
                return s.cop, memory
            return step_toward(g, s.cop, s.robber), memory
        delta = (last[1] - last[0]) % m
        if delta == 1:
            return (s.cop - 1) % m, memory
        if delta == m - 1:
            return (s.cop + 1) % m, memory
        return s.cop, memory


class CopOscillationC6(Strategy):
    """The C6 oscillation: cop on v1 (index 0), robber expected on v5 (index 4).

    Robber to v4 -> cop to v2; robber to v5 -> cop to v1; otherwise pass,
    capturing whenever the robber is adjacent.  Vertex v_k is index k-1.
    """

    role = Side.COP
    name = "oscillation"
    uses_last = False
    responses = {3: 1, 4: 0}

    def __init__(self, start: int = 0):
        if start != 0:
            raise StrategyError("the oscillation strategy starts the cop on v1 (index 0)")
        self.start = start

    def check_host(self, g):
        if require_cycle(g) != 6:
            raise StrategyError("the oscillation strategy is defined on C6 only")

    def place(self, g, opponent, memory):
        return self.start

    def act(self, g, s, last, memory):
        if _adjacent_or_same(g, s.cop, s.robber):
            return s.robber, memory
        target = self.responses.get(s.robber)
        if target is not None and _adjacent_or_same(g, s.cop, target):
            return target, memory
        return s.cop, memory


class CopTreeCenterPursuit(Strategy):
    """Start on a centre of a tree and walk the unique path towards the robber."""

    role = Side.COP
    name = "tree-center"
    uses_last = False

    def check_host(self, g):
        require_tree(g)

    def place(self, g, opponent, memory):
        return radius_ecc_centers(g)[2][0]

    def act(self, g, s, last, memory):
        return step_toward(g, s.cop, s.robber), memory


class CopSolverOptimal(Strategy):
    """Play the table's argmin move; start on the lowest optimal vertex."""

    role = Side.COP
    name = "solver-optimal"
    uses_last = False

    def __init__(self, table: ValueTable, variant: Variant = Variant.NORMAL):
        self.table = table
        self.variant = variant

    def check_host(self, g):
        if g != self.table.graph:
            raise StrategyError("value table was solved for a different graph")

    def place(self, g, opponent, memory):
        return damage_result(self.table, self.variant).best_cop_starts[0]

    def act(self, g, s, last, memory):
        return self.table.best_cop_move(s.damaged, s.cop, s.robber), memory


def solver_factor_policy(h: Graph) -> FactorPolicy:
    """Optimal cop policy on a factor, from its solved table (memoised per factor)."""
    table = factor_table(h)

    def policy(damaged: int, cop: int, robber: int) -> int:
        if cop == robber:
            return cop
        return table.best_cop_move(damaged, cop, robber)

    return policy


class _ProductCop(Strategy):
    role = Side.COP

    def check_host(self, g):
        require_product(g)

    def _split(self, g, v):
        hn = g.factors[1].n
        return v // hn, v % hn

    def _join(self, g, a, b):
        return a * g.factors[1].n + b

    @staticmethod
    def _changed(g, last) -> int | None:
        """Which coordinate (0/1) the opponent's last move changed; None for a pass."""
        if last is None or last[0] == last[1]:
            return None
        hn = g.factors[1].n
        return 0 if last[0] // hn != last[1] // hn else 1

    def _factor_move(self, g, s, coord, policy) -> int:
        G, H = g.factors
        cg, ch = self._split(g, s.cop)
        rg, rh = self._split(g, s.robber)
        proj = project(s.damaged, G.n, H.n, coord)
        if coord == 0:
            return self._join(g, policy(proj, cg, rg), ch)
        return self._join(g, cg, policy(proj, ch, rh))


class CopCoordinateMatch(_ProductCop):
    """Stay in the robber's copy of a factor and play that factor's game there.

    When the cop shares a coordinate with the robber, a robber move that
    breaks the shared coordinate is matched at once; a move (or pass) inside
    the shared copy is answered by the factor policy on the other coordinate.
    Before any sharing exists the cop passes until the robber commits.
    """

    name = "coordinate-match"

    def __init__(self, g_policy: FactorPolicy | None = None, h_policy: FactorPolicy | None = None,
                 start: int = 0):
        self._g_policy = g_policy
        self._h_policy = h_policy
        self.start = start

    def place(self, g, opponent, memory):
        return self.start

    def _policies(self, g):
        G, H = g.factors
        return (self._g_policy or solver_factor_policy(G), self._h_policy or solver_factor_policy(H))

    def act(self, g, s, last, memory):
        G, H = g.factors
        if _adjacent_or_same(g, s.cop, s.robber):
            return s.robber, memory
        pol_g, pol_h = self._policies(g)
        cg, ch = self._split(g, s.cop)
        rg, rh = self._split(g, s.robber)
        changed = self._changed(g, last)
        if cg == rg:  # same copy of H: play H there
            return self._factor_move(g, s, 1, pol_h), memory
        if ch == rh:  # same copy of G
            return self._factor_move(g, s, 0, pol_g), memory
        # no shared coordinate: re-match the coordinate the robber just changed
        if changed == 0 and G.adj[cg] >> rg & 1:
            return self._join(g, rg, ch), memory
        if changed == 1 and H.adj[ch] >> rh & 1:
            return self._join(g, cg, rh), memory
        if last is None:
            return s.cop, memory
        raise StrategyError(
            f"coordinate-match invoked from a non-matching state (cop {s.cop}, robber {s.robber})")


class CopProductTwoPhase(_ProductCop):
    """Product cop built from optimal factor strategies.

    Opening: move the lead coordinate by the lead factor's optimal policy.
    Afterwards: (1) capture, else match a coordinate of the robber when one
    step does it; (2) otherwise answer a robber move in a coordinate with
    the optimal policy of that factor, and a pass with a pass.

    ``lead`` is 0 (first factor), 1 (second) or "auto": the orientation with
    the smaller bound max{dmg(G)|V(H)|, dmg'(H)|V(G)|}.
    """

    name = "two-phase"

    def __init__(self, lead: int | str = "auto", g_policy: FactorPolicy | None = None,
                 h_policy: FactorPolicy | None = None):
        self.lead = lead
        self._g_policy = g_policy
        self._h_policy = h_policy

    def _lead(self, g) -> int:
        if self.lead != "auto":
            return int(self.lead)
        G, H = g.factors
        dg, dgp = factor_damage(G)
        dh, dhp = factor_damage(H)
        first = max(dg * H.n, dhp * G.n)
        second = max(dh * G.n, dgp * H.n)
        return 0 if first <= second else 1

    def bound(self, g) -> int:
        G, H = g.factors
        dg, dgp = factor_damage(G)
        dh, dhp = factor_damage(H)
        return max(dg * H.n, dhp * G.n) if self._lead(g) == 0 else max(dh * G.n, dgp * H.n)

    def place(self, g, opponent, memory):
        G, H = g.factors
        tg, th = factor_table(G), factor_table(H)
        lead = self._lead(g)
        # lead factor: best start of the normal game; other factor: of the cop-passes game
        sg = damage_result(tg, Variant.NORMAL if lead == 0 else Variant.COP_PASSES_FIRST)
        sh = damage_result(th, Variant.COP_PASSES_FIRST if lead == 0 else Variant.NORMAL)
        return self._join(g, sg.best_cop_starts[0], sh.best_cop_starts[0])

    def act(self, g, s, last, memory):
        G, H = g.factors
        if _adjacent_or_same(g, s.cop, s.robber):
            return s.robber, memory
        pols = (self._g_policy or solver_factor_policy(G), self._h_policy or solver_factor_policy(H))
        lead = self._lead(g)
        if last is None:
            return self._factor_move(g, s, lead, pols[lead]), memory
        cg, ch = self._split(g, s.cop)
        rg, rh = self._split(g, s.robber)
        match = [cg != rg and G.adj[cg] >> rg & 1, ch != rh and H.adj[ch] >> rh & 1]
        for coord in (lead, 1 - lead):
            if match[coord]:
                return (self._join(g, rg, ch) if coord == 0 else self._join(g, cg, rh)), memory
        changed = self._changed(g, last)
        if changed is None:
            return s.cop, memory
        return self._factor_move(g, s, changed, pols[changed]), memory


class CopTreeProductEquidistant(_ProductCop):
    """Product of two trees: pass while equidistant, else close the larger gap."""

    name = "tree-equidistant"
    uses_last = False

    def check_host(self, g):
        G, H = require_product(g)
        require_tree(G)
        require_tree(H)

    def place(self, g, opponent, memory):
        G, H = g.factors
        return self._join(g, radius_ecc_centers(G)[2][0], radius_ecc_centers(H)[2][0])

    def act(self, g, s, last, memory):
        G, H = g.factors
        cg, ch = self._split(g, s.cop)
        rg, rh = self._split(g, s.robber)
        d1 = distances(G)[cg][rg]
        d2 = distances(H)[ch][rh]
        if d1 == d2:
            return s.cop, memory
        if d1 > d2:
            return self._join(g, step_toward(G, cg, rg), ch), memory
        return self._join(g, cg, step_toward(H, ch, rh)), memory


COP_STRATEGIES = {
    "stationary": lambda g, **kw: CopStationary(),
    "cycle-opposition": lambda g, **kw: CopCycleOpposition(initial_pass=kw.get("initial_pass", False)),
    "oscillation": lambda g, **kw: CopOscillationC6(),
    "tree-center": lambda g, **kw: CopTreeCenterPursuit(),
    "coordinate-match": lambda g, **kw: CopCoordinateMatch(),
    "two-phase": lambda g, **kw: CopProductTwoPhase(),
    "tree-equidistant": lambda g, **kw: CopTreeProductEquidistant(),
}
