"""On-disk cache for oracle results, keyed by field, oracle, range, and version."""

from __future__ import annotations

import json
import os

from .. import __version__
from ..params import GroupTag


def _cache_path(cache_dir: str, field, oracle: str, m_max) -> str:
    name = f"q2quartic-{oracle}-{field.spec_hash()}-m{m_max}-v{__version__}.json"
    return os.path.join(cache_dir, name)


def load(cache_dir, field, oracle: str, m_max):
    if not cache_dir:
        return None
    path = _cache_path(cache_dir, field, oracle, m_max)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        blob = json.load(fh)
    counts = {(int(m), GroupTag(g)): int(n) for m, g, n in blob["counts"]}
    return counts, blob.get("meta", {})


def store(cache_dir, field, oracle: str, m_max, counts, meta=None):
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, field, oracle, m_max)
    blob = {
        "oracle": oracle,
        "m_max": m_max,
        "field_hash": field.spec_hash(),
        "version": __version__,
        "counts": [[m, g.value, n] for (m, g), n in sorted(
            counts.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
        )],
        "meta": meta or {},
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(blob, fh, indent=1, sort_keys=True)
    os.replace(tmp, path)
