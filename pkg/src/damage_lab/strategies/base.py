"""Strategy protocol, simulator and transcripts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable

from ..engine import GameState, Side, Terminal, Variant, step
from ..graph import Graph, bits

Move = tuple[int, int]  # (from, to); from == to is a pass


class StrategyError(ValueError):
    """Strategy used on an incompatible host or from a state it cannot handle."""


class Strategy:
    """A deterministic finite-memory policy for one role.

    ``act`` receives the opponent's most recent action as ``last`` (None
    before the opponent has acted) and returns ``(target, new_memory)``.
    Memory must be hashable; ``memory_bound`` is an upper bound on the
    number of distinct memory values, used to size best-response searches.
    Strategies that ignore ``last`` set ``uses_last = False`` so searches do
    not split states on it.
    """

    role: Side
    name: str = "strategy"
    uses_last: bool = True

    def check_host(self, g: Graph) -> None:
        pass

    def initial_memory(self, g: Graph) -> Hashable:
        return None

    def place(self, g: Graph, opponent: int | None, memory: Hashable) -> int:
        raise NotImplementedError

    def act(self, g: Graph, s: GameState, last: Move | None, memory: Hashable) -> tuple[int, Hashable]:
        raise NotImplementedError

    def memory_bound(self, g: Graph) -> int:
        return 1

    def __repr__(self) -> str:
        return f"<{self.role.name.lower()} strategy {self.name}>"


@dataclass
class TranscriptEntry:
    round: int
    actor: str
    src: int
    dst: int
    damaged_vertex: int | None

    def to_json(self) -> str:
        return json.dumps({"round": self.round, "actor": self.actor, "from": self.src,
                           "to": self.dst, "damaged_vertex": self.damaged_vertex})


@dataclass
class Transcript:
    graph: Graph
    cop_start: int
    robber_start: int
    entries: list[TranscriptEntry] = field(default_factory=list)
    damaged: int = 0
    reason: str = "capture"  # capture | state-cycle | round-cap
    variant: Variant = Variant.NORMAL

    @property
    def damage(self) -> int:
        return bin(self.damaged).count("1")

    @property
    def damaged_vertices(self) -> list[int]:
        return list(bits(self.damaged))

    @property
    def inconclusive(self) -> bool:
        return self.reason == "round-cap"

    def to_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.entries)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_jsonl())


def replay(g: Graph, cop_start: int, robber_start: int, entries, variant: Variant = Variant.NORMAL) -> int:
    """Re-run recorded moves through ``step``; returns the damaged mask."""
    if cop_start == robber_start:
        return 0
    s: GameState | Terminal = GameState(0, cop_start, robber_start,
                                        Side.COP if variant is Variant.NORMAL else Side.ROBBER)
    for e in entries:
        if isinstance(s, Terminal):
            raise ValueError("moves recorded after capture")
        side = Side.COP if e.actor == "cop" else Side.ROBBER
        if side is not s.to_move:
            raise ValueError(f"round {e.round}: {e.actor} acted out of turn")
        if e.src != (s.cop if side is Side.COP else s.robber):
            raise ValueError(f"round {e.round}: {e.actor} moved from the wrong vertex")
        s, fresh = step(g, s, e.dst)
        if fresh != e.damaged_vertex:
            raise ValueError(f"round {e.round}: damage mismatch")
    return s.damaged


def simulate(g: Graph, cop: Strategy, robber: Strategy, round_cap: int = 1000,
             variant: Variant = Variant.NORMAL, cop_start: int | None = None,
             robber_start: int | None = None) -> Transcript:
    """Play two strategies against each other deterministically.

    Stops on capture, on the first repeated (state, memories, last moves)
    configuration, or after ``round_cap`` rounds (flagged inconclusive).
    With ``Variant.COP_PASSES_FIRST`` the cop's first action is a forced pass.
    """
    if cop.role is not Side.COP or robber.role is not Side.ROBBER:
        raise StrategyError("strategies are not role-correct")
    cop.check_host(g)
    robber.check_host(g)
    cmem = cop.initial_memory(g)
    rmem = robber.initial_memory(g)
    c0 = cop.place(g, None, cmem) if cop_start is None else cop_start
    r0 = robber.place(g, c0, rmem) if robber_start is None else robber_start
    tr = Transcript(g, c0, r0, variant=variant)
    if c0 == r0:
        return tr
    s: GameState | Terminal = GameState(
        0, c0, r0, Side.ROBBER if variant is Variant.COP_PASSES_FIRST else Side.COP)
    cop_last: Move | None = None  # cop's last action, seen by the robber
    rob_last: Move | None = None
    seen = set()
    rnd = 1
    while True:
        if isinstance(s, Terminal):
            tr.damaged = s.damaged
            tr.reason = "capture"
            return tr
        key = (s, cmem, rmem, cop_last, rob_last)
        if key in seen:
            tr.damaged = s.damaged
            tr.reason = "state-cycle"
            return tr
        seen.add(key)
        if rnd > round_cap:
            tr.damaged = s.damaged
            tr.reason = "round-cap"
            return tr
        if s.to_move is Side.COP:
            target, cmem = cop.act(g, s, rob_last, cmem)
            tr.entries.append(TranscriptEntry(rnd, "cop", s.cop, target, None))
            cop_last = (s.cop, target)
            s, _ = step(g, s, target)
        else:
            target, rmem = robber.act(g, s, cop_last, rmem)
            src = s.robber
            s, fresh = step(g, s, target)
            tr.entries.append(TranscriptEntry(rnd, "robber", src, target, fresh))
            rob_last = (src, target)
            rnd += 1
