"""Append-only JSONL cache of per-graph results.

One record per line.  Records are keyed by the literal graph descriptor
and are only served when their ``solver_version`` matches the running
solver.  The newest matching record wins.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .engine import SOLVER_VERSION

CACHE_SCHEMA = "damage-lab/cache-record/1"
CACHE_ENV = "DAMAGE_LAB_CACHE"


@dataclass
class CacheRecord:
    graph_key: str
    n: int
    dmg: int
    dmg_prime: int
    capt: int | str  # "inf" when not copwin
    rad: int
    dmg_cop_starts: list[int] = field(default_factory=list)
    dmg_prime_cop_starts: list[int] = field(default_factory=list)
    capt_cop_starts: list[int] = field(default_factory=list)
    solver_version: str = SOLVER_VERSION
    elapsed_ms: float = 0.0
    timestamp: float = field(default_factory=time.time)

    def to_json(self) -> str:
        d = asdict(self)
        d["schema"] = CACHE_SCHEMA
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "CacheRecord":
        d = json.loads(line)
        d.pop("schema", None)
        return cls(**d)


class ResultCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    @classmethod
    def from_env(cls, explicit: str | None = None) -> "ResultCache | None":
        path = explicit or os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def records(self):
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield CacheRecord.from_json(line)
                except (ValueError, TypeError):
                    continue  # torn or foreign line

    def lookup(self, key: str) -> CacheRecord | None:
        hit = None
        for rec in self.records():
            if rec.graph_key == key and rec.solver_version == SOLVER_VERSION:
                hit = rec
        return hit

    def append(self, rec: CacheRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        data = (rec.to_json() + "\n").encode("utf-8")
        # single O_APPEND write per record
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, data)
        finally:
            os.close(fd)
