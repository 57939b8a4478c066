"""Content-addressed report cache.

Keys hash the fully resolved run configuration together with a code
version tag, so stale caches from older versions are never trusted.
Cached artifacts are raw bytes and are re-emitted verbatim, which makes
cached reruns byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

CACHE_VERSION = "ringreps-cache-1"


def cache_key(payload: dict) -> str:
    blob = json.dumps({"version": CACHE_VERSION, **payload}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


class ReportCache:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.bin"

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        if path.is_file():
            return path.read_bytes()
        return None

    def put(self, key: str, data: bytes) -> None:
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_bytes(data)
        tmp.replace(self._path(key))
