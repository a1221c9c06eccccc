"""Single-file persistence with atomic replace.

The whole service state lives in one JSON document, one store per learner.
Writes go to a temp file in the same directory followed by os.replace, so an
interruption at any point leaves the previous state loadable.
"""

from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime
from pathlib import Path
from typing import Callable

from .errors import CorruptStoreError, IoFailureError
from .models import utc_now
from .store import CurationStore

STATE_VERSION = 1

StoreMap = dict[str, CurationStore]


def load_store(path: Path, clock: Callable[[], datetime] = utc_now) -> StoreMap:
    """Load persisted state; a missing file yields a fresh empty state."""
    path = Path(path)
    if not path.exists():
        return {}
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorruptStoreError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(payload, dict) or payload.get("version") != STATE_VERSION:
        raise CorruptStoreError(f"{path}: unsupported or missing state version")
    learners = payload.get("learners")
    if not isinstance(learners, dict):
        raise CorruptStoreError(f"{path}: 'learners' record missing")
    stores: StoreMap = {}
    for learner_id, data in learners.items():
        try:
            stores[learner_id] = CurationStore.from_dict(data, clock=clock)
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptStoreError(f"{path}: learner {learner_id!r}: bad record ({exc})") from exc
    return stores


def persist_store(stores: StoreMap, path: Path) -> None:
    """Atomically write the full state: temp file, fsync, rename."""
    path = Path(path)
    payload = {
        "version": STATE_VERSION,
        "learners": {learner_id: store.to_dict() for learner_id, store in stores.items()},
    }
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    tmp_path = None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_path, path)
        tmp_path = None
    except OSError as exc:
        raise IoFailureError(f"cannot persist to {path}: {exc}") from exc
    finally:
        if tmp_path is not None and os.path.exists(tmp_path):
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
