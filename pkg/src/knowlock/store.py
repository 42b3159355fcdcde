"""Local attribute store and automatic post opening.

The store is the user-side memory of attribute values: a plain JSON
file on the local machine, never transmitted.  Values are stored
normalized.  The file is guarded by an advisory lock so two processes
do not interleave writes; the content itself is NOT encrypted at rest
(documented trade-off — protect the file with filesystem permissions).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from itertools import combinations, product
from pathlib import Path

from filelock import FileLock

from .errors import StoreIoError
from .scheme import ProtectedPost, access, looks_like_text
from .text import normalize

STORE_VERSION = 1
DEFAULT_COMBINATION_CAP = 1000
STORE_PATH_ENV = "KNOWLOCK_STORE"


def default_store_path() -> Path:
    env = os.environ.get(STORE_PATH_ENV)
    if env:
        return Path(env)
    return Path.home() / ".knowlock" / "attributes.json"


@dataclass
class StoreEntry:
    description: str
    value: str
    created_at: str


@dataclass
class AttributeStore:
    """List of remembered (description, value) pairs backed by one file."""

    path: Path
    entries: list[StoreEntry] = field(default_factory=list)

    @classmethod
    def load(cls, path: Path | str) -> "AttributeStore":
        path = Path(path)
        if not path.exists():
            return cls(path=path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            entries = [
                StoreEntry(
                    description=e["description"],
                    value=e["value"],
                    created_at=e["created_at"],
                )
                for e in raw["entries"]
            ]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise StoreIoError(f"cannot read store {path}: {exc}") from exc
        return cls(path=path, entries=entries)

    def save(self) -> None:
        doc = {
            "version": STORE_VERSION,
            "entries": [
                {
                    "description": e.description,
                    "value": e.value,
                    "created_at": e.created_at,
                }
                for e in self.entries
            ],
        }
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self._lock():
                tmp = self.path.with_suffix(self.path.suffix + ".tmp")
                tmp.write_text(
                    json.dumps(doc, indent=2, ensure_ascii=False), encoding="utf-8"
                )
                os.chmod(tmp, 0o600)
                os.replace(tmp, self.path)
        except OSError as exc:
            raise StoreIoError(f"cannot write store {self.path}: {exc}") from exc

    def _lock(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def put(self, description: str, value: str) -> StoreEntry:
        """Remember a pair; value is normalized, duplicates are refreshed."""
        value = normalize(value)
        now = datetime.now(timezone.utc).isoformat(timespec="seconds")
        for e in self.entries:
            if e.description == description and e.value == value:
                e.created_at = now
                return e
        entry = StoreEntry(description=description, value=value, created_at=now)
        self.entries.append(entry)
        return entry

    def delete(self, description: str, value: str | None = None) -> int:
        """Drop entries for a description (optionally one value). Returns count."""
        if value is not None:
            value = normalize(value)
        before = len(self.entries)
        self.entries = [
            e
            for e in self.entries
            if not (
                e.description == description
                and (value is None or e.value == value)
            )
        ]
        return before - len(self.entries)

    def values_for(self, description: str) -> list[str]:
        """Stored values whose description matches exactly post-normalization."""
        want = normalize(description)
        return [e.value for e in self.entries if normalize(e.description) == want]


@dataclass
class AutoAccessResult:
    """Outcome of trying stored values against a protected post.

    ``matched`` means some combination produced output that *looks like*
    text — a heuristic, not proof of correct decryption, hence the
    confidence marker.
    """

    matched: bool
    plaintext: bytes | None
    combinations_tried: int
    cap_exceeded: bool
    confidence: str = "heuristic-text-check"


def auto_access(
    pp: ProtectedPost,
    store: AttributeStore,
    cap: int = DEFAULT_COMBINATION_CAP,
) -> AutoAccessResult:
    """Replay stored values against a post without prompting.

    Enumerates t-subsets of the post's positions whose descriptions have
    stored values, trying every stored-value combination (bounded by
    ``cap``) and returning the first output that passes the text
    heuristic.  Binary posts will not match this way — open those
    explicitly with known values.
    """
    t = pp.params.t
    candidates = [store.values_for(d) for d in pp.descriptions]
    positions = [i for i, vals in enumerate(candidates) if vals]

    tried = 0
    for subset in combinations(positions, t):
        for values in product(*(candidates[i] for i in subset)):
            if tried >= cap:
                return AutoAccessResult(
                    matched=False,
                    plaintext=None,
                    combinations_tried=tried,
                    cap_exceeded=True,
                )
            tried += 1
            guesses = [(i + 1, v) for i, v in zip(subset, values)]
            out = access(guesses, pp)
            if looks_like_text(out):
                return AutoAccessResult(
                    matched=True,
                    plaintext=out,
                    combinations_tried=tried,
                    cap_exceeded=False,
                )
    return AutoAccessResult(
        matched=False, plaintext=None, combinations_tried=tried, cap_exceeded=False
    )
