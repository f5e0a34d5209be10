"""Append-only JSON-lines result cache, one file per operation tag.

Line format::

    {"k": key, "op": tag, "p": param digest, "v": engine version, "r": result, "d": result digest}

``d`` guards against torn or hand-edited lines; a line whose digest does not
match is ignored and the value is recomputed.  The last valid line for a
(key, params, version) triple wins.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import __version__

__all__ = ["ENGINE_VERSION", "CacheConfig", "ResultCache", "digest", "canonical_dumps"]

ENGINE_VERSION = f"krbraid-{__version__}"
ENV_VAR = "KRW_CACHE_DIR"


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CacheConfig:
    directory: str | None = None
    version: str = ENGINE_VERSION

    def resolved_directory(self) -> Path | None:
        d = self.directory or os.environ.get(ENV_VAR)
        return Path(d) if d else None


class ResultCache:
    def __init__(self, config: CacheConfig | None = None):
        self.config = config or CacheConfig()
        self.directory = self.config.resolved_directory()
        self.version = self.config.version
        self.hits = 0
        self.misses = 0
        self.corrupt = 0
        if self.directory is not None:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                warnings.warn(f"cache disabled, cannot create {self.directory}: {exc}")
                self.directory = None

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def _path(self, op: str) -> Path:
        return self.directory / f"{op}.jsonl"

    def get(self, key: str, op: str, params: dict):
        """Cached result or ``None``."""
        if not self.enabled:
            return None
        path = self._path(op)
        if not path.exists():
            return None
        p = digest(params)
        found = None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                fcntl.flock(fh, fcntl.LOCK_SH)
                try:
                    lines = fh.readlines()
                finally:
                    fcntl.flock(fh, fcntl.LOCK_UN)
        except OSError as exc:
            warnings.warn(f"cache read failed: {exc}")
            return None
        for line in lines:
            try:
                e = json.loads(line)
            except json.JSONDecodeError:
                self.corrupt += 1
                continue
            if not isinstance(e, dict) or e.get("k") != key or e.get("op") != op or e.get("p") != p:
                continue
            if e.get("v") != self.version:
                continue
            if e.get("d") != digest(e.get("r")):
                self.corrupt += 1
                continue
            found = e["r"]
        return found

    def put(self, key: str, op: str, params: dict, result) -> bool:
        if not self.enabled:
            return False
        line = canonical_dumps(
            {"k": key, "op": op, "p": digest(params), "v": self.version, "r": result, "d": digest(result)}
        )
        try:
            with open(self._path(op), "a", encoding="utf-8") as fh:
                fcntl.flock(fh, fcntl.LOCK_EX)
                try:
                    fh.write(line + "\n")
                    fh.flush()
                finally:
                    fcntl.flock(fh, fcntl.LOCK_UN)
        except OSError as exc:
            warnings.warn(f"cache write failed, computing through: {exc}")
            return False
        return True

    def get_or_compute(self, key: str, op: str, params: dict, compute):
        """``(result, hit)``.  Fresh results are normalized through JSON so a
        cached and an uncached call return equal objects."""
        hit = self.get(key, op, params)
        if hit is not None:
            self.hits += 1
            return hit, True
        self.misses += 1
        result = json.loads(canonical_dumps(compute()))
        self.put(key, op, params, result)
        return result, False
