"""On-disk JSON cache for expensive results.

Entries are keyed by a hash of (kind, diagram, package version) and carry a
checksum of their payload.  Writes go to a temporary file in the same
directory and are moved into place with os.replace, so readers never see a
partial file.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

ENV_VAR = "GHJFUSION_CACHE_DIR"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env).expanduser()
    base = os.environ.get("XDG_CACHE_HOME") or "~/.cache"
    return Path(base).expanduser() / "ghjfusion"


def _digest(payload: Any) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class Cache:
    def __init__(self, directory: str | Path | None = None, version: str | None = None):
        from . import __version__

        self.dir = Path(directory) if directory is not None else default_dir()
        self.version = version or __version__

    def _path(self, kind: str, key: str) -> Path:
        name = hashlib.sha256(f"{kind}:{key}:{self.version}".encode()).hexdigest()[:32]
        return self.dir / f"{kind}-{name}.json"

    def get(self, kind: str, key: str) -> Any | None:
        path = self._path(kind, key)
        try:
            with open(path) as f:
                entry = json.load(f)
        except (OSError, ValueError):
            return None
        if entry.get("key") != key or entry.get("version") != self.version:
            return None
        if entry.get("checksum") != _digest(entry.get("payload")):
            return None
        return entry["payload"]

    def put(self, kind: str, key: str, payload: Any) -> None:
        entry = {"key": key, "version": self.version, "checksum": _digest(payload), "payload": payload}
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as f:
                json.dump(entry, f)
            os.replace(tmp, self._path(kind, key))
        except OSError:
            # a cache that cannot be written only costs time
            pass
