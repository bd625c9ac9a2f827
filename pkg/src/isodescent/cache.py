"""Append-only JSONL store of local solvability verdicts."""
from __future__ import annotations

import json
import os
from pathlib import Path

ENV_VAR = "ISODESCENT_CACHE"


def record_key(t, tag: str, place, d) -> tuple[str, str, str, str]:
    return (str(t), tag, str(place), str(d))


class SolvabilityCache:
    """In-memory map backed by an optional line-delimited JSON file.

    Records are deterministic, so concurrent or repeated writers merge
    idempotently: the first record for a key wins on reload.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._data: dict[tuple, dict] = {}
        self.hits = 0
        self.misses = 0
        if self.path and self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    key = record_key(rec["t"], rec["tag"], rec["place"], rec["d"])
                    self._data.setdefault(key, rec)

    @classmethod
    def from_env(cls, default=None) -> SolvabilityCache:
        return cls(os.environ.get(ENV_VAR) or default)

    def get(self, key):
        rec = self._data.get(key)
        if rec is None:
            self.misses += 1
        else:
            self.hits += 1
        return rec

    def put(self, rec: dict) -> None:
        key = record_key(rec["t"], rec["tag"], rec["place"], rec["d"])
        if key in self._data:
            return
        self._data[key] = rec
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def __len__(self):
        return len(self._data)

    def stats(self) -> dict:
        return {"entries": len(self._data), "hits": self.hits, "misses": self.misses}
