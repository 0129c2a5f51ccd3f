"""
Content-addressed result cache
"""

import hashlib
import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Dict, Optional

from config import CACHE_VERSION

logger = logging.getLogger(__name__)


def _canonical(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def cache_key(operation: str, arguments: Any, datum_key: str) -> str:
    """
    sha256 key of an operation call.

    Args:
        operation: Operation name, e.g. 'braid_morphism'
        arguments: JSON-serializable arguments; order of positional items matters
        datum_key: Fingerprint of the datum (includes the braid-path rule)

    Returns:
        Hex digest
    """
    payload = {
        'version': CACHE_VERSION,
        'operation': operation,
        'arguments': _canonical(arguments),
        'datum': datum_key,
    }
    encoded = json.dumps(payload, sort_keys=True, separators=(',', ':'), ensure_ascii=True)
    return hashlib.sha256(encoded.encode('utf-8')).hexdigest()


class ResultCache:
    """In-memory cache backed by an optional directory of JSON files"""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory) if directory else None
        self._memory: Dict[str, Any] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, key: str) -> Optional[Any]:
        if key in self._memory:
            self.hits += 1
            return self._memory[key]
        if self.directory is not None:
            path = self._path(key)
            if path.exists():
                try:
                    with open(path, 'r', encoding='utf-8') as f:
                        entry = json.load(f)
                except (OSError, json.JSONDecodeError) as e:
                    logger.warning("Ignoring unreadable cache entry %s: %s", path, e)
                    entry = None
                if entry and entry.get('version') == CACHE_VERSION:
                    self.hits += 1
                    with self._lock:
                        self._memory[key] = entry['value']
                    return entry['value']
                if entry:
                    logger.info("Ignoring cache entry %s with version %s", key[:12], entry.get('version'))
        self.misses += 1
        return None

    def put(self, key: str, value: Any):
        with self._lock:
            self._memory[key] = value
            if self.directory is None:
                return
            path = self._path(key)
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix='.tmp')
            try:
                with os.fdopen(fd, 'w', encoding='utf-8') as f:
                    json.dump({'version': CACHE_VERSION, 'key': key, 'value': value}, f, indent=2)
                os.replace(tmp, path)
            except OSError:
                if os.path.exists(tmp):
                    os.remove(tmp)
                raise

    def get_or_compute(self, key: str, compute):
        """Return the cached value, computing and storing it on a miss."""
        value = self.get(key)
        if value is None:
            value = compute()
            self.put(key, value)
        return value
