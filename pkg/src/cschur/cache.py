"""Tiny file cache for expensive per-(d, n) tables.

The directory comes from the CSCHUR_CACHE_DIR environment variable (or an
explicit CLI flag that sets it); without it, caching is off.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

ENV_VAR = "CSCHUR_CACHE_DIR"


def default_cache_dir() -> Path | None:
    val = os.environ.get(ENV_VAR)
    return Path(val) if val else None


def load_json(key: str) -> object | None:
    base = default_cache_dir()
    if base is None:
        return None
    path = base / f"{key}.json"
    if not path.is_file():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return None


def save_json(key: str, obj: object) -> None:
    base = default_cache_dir()
    if base is None:
        return
    try:
        base.mkdir(parents=True, exist_ok=True)
        tmp = base / f"{key}.json.tmp"
        tmp.write_text(json.dumps(obj, sort_keys=True), encoding="utf-8")
        tmp.replace(base / f"{key}.json")
    except OSError:
        pass
