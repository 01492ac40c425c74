"""Persistence for sessions and monologues.

Two flavors on one interface: the HTTP service keeps everything in memory
and mirrors it to a single JSON snapshot file on every mutation (atomic
temp-file-then-rename), while the CLI keeps one JSON file per item so
workflows survive between invocations.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from .domain import ScribbleError
from .engine import Monologue, Session
from .serialize import item_from_dict, item_to_dict

SNAPSHOT_VERSION = 1


class NotFound(ScribbleError):
    code = "NotFound"


class SessionStore:
    """In-memory map of id -> Session/Monologue with optional snapshotting.

    ``lock(item_id)`` hands out one exclusive lock per id; the service takes
    it around every read-modify-write so concurrent mutations of one session
    serialize while unrelated sessions proceed in parallel.
    """

    def __init__(self, snapshot_path: Path | str | None = None):
        self._items: dict[str, Session | Monologue] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._master = threading.Lock()
        self._snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self._snapshot_path and self._snapshot_path.exists():
            self._load()

    def lock(self, item_id: str) -> threading.Lock:
        with self._master:
            if item_id not in self._locks:
                self._locks[item_id] = threading.Lock()
            return self._locks[item_id]

    def get(self, item_id: str) -> Session | Monologue:
        with self._master:
            try:
                return self._items[item_id]
            except KeyError:
                raise NotFound(f"no session or monologue with id {item_id!r}") from None

    def get_session(self, item_id: str) -> Session:
        item = self.get(item_id)
        if not isinstance(item, Session):
            raise NotFound(f"no dialogue session with id {item_id!r}")
        return item

    def get_monologue(self, item_id: str) -> Monologue:
        item = self.get(item_id)
        if not isinstance(item, Monologue):
            raise NotFound(f"no monologue with id {item_id!r}")
        return item

    def put(self, item: Session | Monologue) -> None:
        with self._master:
            self._items[item.id] = item
            self._snapshot_locked()

    def ids(self) -> list[str]:
        with self._master:
            return sorted(self._items)

    def _load(self) -> None:
        data = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
        self._items = {
            item["id"]: item_from_dict(item) for item in data.get("items", [])
        }

    def _snapshot_locked(self) -> None:
        if self._snapshot_path is None:
            return
        payload = {
            "version": SNAPSHOT_VERSION,
            "items": [item_to_dict(item) for item in self._items.values()],
        }
        _atomic_write_json(self._snapshot_path, payload)


class DirectoryStore:
    """One JSON file per item under a directory; used by the CLI."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)

    def _path(self, item_id: str) -> Path:
        return self.directory / f"{item_id}.json"

    def get(self, item_id: str) -> Session | Monologue:
        path = self._path(item_id)
        if not path.exists():
            raise NotFound(f"no session or monologue with id {item_id!r}")
        return item_from_dict(json.loads(path.read_text(encoding="utf-8")))

    def get_session(self, item_id: str) -> Session:
        item = self.get(item_id)
        if not isinstance(item, Session):
            raise NotFound(f"no dialogue session with id {item_id!r}")
        return item

    def get_monologue(self, item_id: str) -> Monologue:
        item = self.get(item_id)
        if not isinstance(item, Monologue):
            raise NotFound(f"no monologue with id {item_id!r}")
        return item

    def put(self, item: Session | Monologue) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        _atomic_write_json(self._path(item.id), item_to_dict(item))


def _atomic_write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    os.replace(tmp, path)
