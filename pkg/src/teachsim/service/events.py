"""Append-only JSONL persistence for study sessions.

The log is the source of truth: a crashed server replays it and reaches
the same state.  One file per session plus an index file listing the
sessions that exist; every append is fsynced before it is acknowledged.
"""

from __future__ import annotations

import json
import os
from pathlib import Path


class EventStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.index_path = self.root / "index.jsonl"

    def _session_path(self, session_id: str) -> Path:
        if "/" in session_id or session_id.startswith("."):
            raise ValueError(f"bad session id {session_id!r}")
        return self.root / f"{session_id}.jsonl"

    def _append_line(self, path: Path, doc: dict) -> None:
        with open(path, "a") as handle:
            handle.write(json.dumps(doc) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def register(self, entry: dict) -> None:
        """Add a session to the index; entry must carry its id as "session"."""
        if "session" not in entry:
            raise ValueError("index entries need a session id")
        self._append_line(self.index_path, entry)

    def append(self, session_id: str, event: dict) -> None:
        self._append_line(self._session_path(session_id), event)

    def read(self, session_id: str) -> list[dict]:
        path = self._session_path(session_id)
        if not path.exists():
            return []
        with open(path) as handle:
            return [json.loads(line) for line in handle if line.strip()]

    def sessions(self) -> list[dict]:
        if not self.index_path.exists():
            return []
        with open(self.index_path) as handle:
            return [json.loads(line) for line in handle if line.strip()]
