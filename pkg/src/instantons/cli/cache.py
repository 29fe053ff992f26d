"""Content-addressed on-disk cache of result records."""

import hashlib
import json
import os
import sys
import tempfile

from .records import SCHEMA_VERSION


def cache_key(command, inputs):
    """Hex digest of (schema version, command, canonical inputs)."""
    blob = json.dumps([SCHEMA_VERSION, command, inputs], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory, warn=None):
        self.directory = directory
        self.warn = warn or (lambda msg: print(f"warning: {msg}", file=sys.stderr))
        self.hits = 0

    def path(self, key):
        return os.path.join(self.directory, key + ".json")

    def lookup(self, key):
        """Stored dict, or ``None`` if missing or unreadable."""
        path = self.path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise ValueError("not an object")
        except (OSError, ValueError) as exc:
            self.warn(f"ignoring unreadable cache entry {path} ({exc}); recomputing")
            return None
        self.hits += 1
        return data

    def store(self, key, value):
        """Atomically write ``value``; cache failures are only warned about."""
        try:
            os.makedirs(self.directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(value, fh)
                os.replace(tmp, self.path(key))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            self.warn(f"could not write cache entry ({exc})")
