"""Content-addressed persistence for CLI reports.

Entries are keyed by a hash of the canonical run parameters and carry a
checksum of the stored report; a corrupted entry is deleted and treated
as a miss, so the next run recomputes and repairs it.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

__all__ = ["cache_key", "cache_get", "cache_put"]


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def cache_key(payload: dict) -> str:
    """Hash of the canonical JSON encoding of the run parameters."""
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return _sha256(blob)


def cache_get(root: str | Path, key: str) -> dict | None:
    """Return the stored entry ({'report': str, 'exit_code': int}) or None."""
    path = Path(root) / f"{key}.json"
    if not path.is_file():
        return None
    try:
        entry = json.loads(path.read_text(encoding="utf-8"))
        report = entry["report"]
        exit_code = int(entry["exit_code"])
        if _sha256(report) != entry["checksum"]:
            raise ValueError("checksum mismatch")
    except (ValueError, KeyError, TypeError, json.JSONDecodeError):
        path.unlink(missing_ok=True)
        return None
    return {"report": report, "exit_code": exit_code}


def cache_put(root: str | Path, key: str, report: str, exit_code: int) -> None:
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    entry = {
        "checksum": _sha256(report),
        "exit_code": exit_code,
        "report": report,
    }
    (root / f"{key}.json").write_text(
        json.dumps(entry, sort_keys=True), encoding="utf-8"
    )
