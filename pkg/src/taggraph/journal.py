"""Append-only journal persistence with snapshot support.

Every acknowledged mutation is first written as one or more effect records
(one UTF-8 JSON object per line, strictly increasing ``seq``) and fsynced;
replaying the journal from scratch reconstructs the exact store and event
log. A snapshot file captures the state at some seq so startup only has to
replay the journal suffix.

Record kinds:
  TRIPLE_ADD    {user, tag, resource, at}
  TRIPLE_REMOVE {user, tag, resource}
  TITLE_SET     {user, resource, title}   title null deletes the entry
  EVENT         {user, at, mode, action}
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .analytics import ClickEvent, event_from_dict
from .core import FolksonomyStore, Snapshot, Triple
from .errors import JournalCorrupt, SnapshotVersionError

SNAPSHOT_VERSION = 1

KINDS = ("TRIPLE_ADD", "TRIPLE_REMOVE", "TITLE_SET", "EVENT")


@dataclass(frozen=True)
class JournalRecord:
    seq: int
    kind: str
    payload: dict


def read_journal(path: str | Path) -> list[JournalRecord]:
    """Parse a journal file, refusing on any corrupt or out-of-order line.

    The line number in the error is 1-based; a corrupt trailing line is a
    refusal too, never silently truncated.
    """
    path = Path(path)
    records: list[JournalRecord] = []
    last_seq = 0
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
                record = JournalRecord(
                    seq=int(obj["seq"]), kind=str(obj["kind"]), payload=obj["payload"]
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise JournalCorrupt(str(path), line_no, f"unreadable record: {exc}")
            if record.kind not in KINDS:
                raise JournalCorrupt(str(path), line_no, f"unknown kind {record.kind!r}")
            if record.seq <= last_seq:
                raise JournalCorrupt(
                    str(path), line_no, f"seq {record.seq} not above {last_seq}"
                )
            last_seq = record.seq
            records.append(record)
    return records


class Journal:
    """Appender for an open journal file. One instance per process."""

    def __init__(self, path: str | Path, last_seq: int = 0):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("a", encoding="utf-8")
        self._seq = last_seq

    @property
    def last_seq(self) -> int:
        return self._seq

    def append(self, batch: Sequence[tuple[str, dict]]) -> list[JournalRecord]:
        """Assign seqs, write and fsync all records of one mutation."""
        records = []
        lines = []
        seq = self._seq
        for kind, payload in batch:
            if kind not in KINDS:
                raise ValueError(f"unknown journal kind {kind!r}")
            seq += 1
            records.append(JournalRecord(seq, kind, payload))
            lines.append(
                json.dumps(
                    {"seq": seq, "kind": kind, "payload": payload},
                    ensure_ascii=False,
                    sort_keys=True,
                )
            )
        self._fh.write("".join(line + "\n" for line in lines))
        self._fh.flush()
        os.fsync(self._fh.fileno())
        self._seq = seq
        return records

    def close(self) -> None:
        self._fh.close()


# ---------------------------------------------------------------------------
# Record application (replay path and low-level append_and_apply)
# ---------------------------------------------------------------------------

def apply_record(store: FolksonomyStore, events: list[ClickEvent], record: JournalRecord) -> None:
    """Apply one effect record to in-memory state. Tolerant of no-ops
    (removing an absent triple, re-adding a present one)."""
    p = record.payload
    if record.kind == "TRIPLE_ADD":
        store._raw_add(p["user"], p["tag"], p["resource"], float(p["at"]))
    elif record.kind == "TRIPLE_REMOVE":
        store._raw_remove(p["user"], p["tag"], p["resource"])
    elif record.kind == "TITLE_SET":
        store._raw_set_title(p["user"], p["resource"], p["title"])
    elif record.kind == "EVENT":
        events.append(event_from_dict(p))
    else:  # pragma: no cover - read_journal already rejects these
        raise ValueError(f"unknown journal kind {record.kind!r}")


def diff_records(
    before: Snapshot,
    after: Snapshot,
    new_events: Sequence[ClickEvent] = (),
) -> list[tuple[str, dict]]:
    """Effect records that turn ``before`` into ``after`` (plus events).

    Removes come first, then adds, then title changes, all sorted, so a
    given state transition always journals identically.
    """
    batch: list[tuple[str, dict]] = []
    for key in sorted(set(before.entries) - set(after.entries)):
        user, tag, resource = key
        batch.append(("TRIPLE_REMOVE", {"user": user, "tag": tag, "resource": resource}))
    for key in sorted(k for k in after.entries if before.entries.get(k) != after.entries[k]):
        t = after.entries[key]
        batch.append(
            (
                "TRIPLE_ADD",
                {"user": t.user, "tag": t.tag, "resource": t.resource, "at": t.created_at},
            )
        )
    before_titles = {
        (r, u): title for r, per in before.titles.items() for u, title in per.items()
    }
    after_titles = {
        (r, u): title for r, per in after.titles.items() for u, title in per.items()
    }
    for (r, u) in sorted(set(before_titles) - set(after_titles)):
        batch.append(("TITLE_SET", {"user": u, "resource": r, "title": None}))
    for (r, u) in sorted(k for k in after_titles if before_titles.get(k) != after_titles[k]):
        batch.append(("TITLE_SET", {"user": u, "resource": r, "title": after_titles[(r, u)]}))
    for e in new_events:
        batch.append(
            (
                "EVENT",
                {
                    "user": e.user,
                    "at": int(e.at) if float(e.at).is_integer() else e.at,
                    "mode": e.mode.value,
                    "action": e.action.value,
                },
            )
        )
    return batch


# ---------------------------------------------------------------------------
# Snapshot files
# ---------------------------------------------------------------------------

def write_snapshot_file(
    path: str | Path, state: Snapshot, events: Sequence[ClickEvent], seq: int
) -> None:
    """Write state at ``seq`` atomically (tmp file + rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "version": SNAPSHOT_VERSION,
        "seq": seq,
        "triples": [
            {"user": t.user, "tag": t.tag, "resource": t.resource, "at": t.created_at}
            for t in state.entries.values()
        ],
        "titles": state.titles,
        "events": [
            {"user": e.user, "at": e.at, "mode": e.mode.value, "action": e.action.value}
            for e in events
        ],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_snapshot_file(path: str | Path) -> tuple[Snapshot, list[ClickEvent], int]:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("version") != SNAPSHOT_VERSION:
        raise SnapshotVersionError(
            f"{path}: snapshot version {doc.get('version')!r}, expected {SNAPSHOT_VERSION}"
        )
    entries = {}
    for row in doc["triples"]:
        t = Triple(row["user"], row["tag"], row["resource"], float(row["at"]))
        entries[t.key] = t
    titles = {r: dict(per) for r, per in doc["titles"].items()}
    events = [event_from_dict(row) for row in doc["events"]]
    return Snapshot(entries, titles), events, int(doc["seq"])


# ---------------------------------------------------------------------------
# Persistent store
# ---------------------------------------------------------------------------

class PersistentStore:
    """Journal-backed store facade: every mutation is durable before it is
    acknowledged, and a write failure leaves memory untouched.

    One lock serializes writers end to end (apply, diff, append, possible
    rollback); readers take lock-free snapshots.
    """

    def __init__(
        self,
        journal: Journal,
        store: FolksonomyStore,
        events: list[ClickEvent] | None = None,
    ):
        self._journal = journal
        self._store = store
        self._events: list[ClickEvent] = list(events or [])
        self._lock = threading.Lock()

    # -- construction --------------------------------------------------------

    @classmethod
    def open(
        cls,
        journal_path: str | Path,
        snapshot_path: str | Path | None = None,
        clock: Callable[[], float] = time.time,
    ) -> "PersistentStore":
        """Recover state: snapshot (if any) plus journal suffix replay."""
        store = FolksonomyStore(clock=clock)
        events: list[ClickEvent] = []
        base_seq = 0
        if snapshot_path is not None and Path(snapshot_path).exists():
            state, events, base_seq = load_snapshot_file(snapshot_path)
            store._restore(state)
        journal_path = Path(journal_path)
        last_seq = base_seq
        if journal_path.exists():
            for record in read_journal(journal_path):
                if record.seq <= base_seq:
                    continue
                apply_record(store, events, record)
                last_seq = record.seq
        return cls(Journal(journal_path, last_seq=last_seq), store, events)

    # -- views ---------------------------------------------------------------

    @property
    def store(self) -> FolksonomyStore:
        return self._store

    @property
    def state(self) -> Snapshot:
        return self._store.state

    @property
    def events(self) -> list[ClickEvent]:
        return list(self._events)

    @property
    def last_seq(self) -> int:
        return self._journal.last_seq

    def close(self) -> None:
        self._journal.close()

    # -- mutation plumbing ----------------------------------------------------

    def _mutate(self, apply: Callable[[], object]):
        with self._lock:
            before = self._store.state
            result = apply()
            batch = diff_records(before, self._store.state)
            if batch:
                try:
                    self._journal.append(batch)
                except Exception:
                    self._store._restore(before)
                    raise
            return result

    def append_and_apply(self, kind: str, payload: dict) -> JournalRecord:
        """Low-level path: journal one record (even a no-op) durably, then
        apply it to memory."""
        with self._lock:
            [record] = self._journal.append([(kind, payload)])
            apply_record(self._store, self._events, record)
            return record

    # -- journaled store operations -------------------------------------------

    def add_annotation(self, user, url, title, tags, now=None) -> list[Triple]:
        return self._mutate(
            lambda: self._store.add_annotation(user, url, title, tags, now)
        )

    def remove_resource(self, user, url) -> int:
        removed = self._mutate(lambda: self._store.remove_resource(user, url))
        return len(removed)

    def set_tags(self, user, url, tags, now=None) -> tuple[list[str], list[str]]:
        return self._mutate(lambda: self._store.set_tags(user, url, tags, now))

    def set_title(self, user, url, title) -> None:
        self._mutate(lambda: self._store.set_title(user, url, title))

    def rename_tag(self, user, old, new) -> int:
        return self._mutate(lambda: self._store.rename_tag(user, old, new))

    def record_events(self, events: Iterable[ClickEvent]) -> int:
        """Append click events durably, then to the in-memory log."""
        events = list(events)
        if not events:
            return 0
        with self._lock:
            self._journal.append(diff_records(self.state, self.state, events))
            self._events.extend(events)
            return len(events)

    # -- snapshots -------------------------------------------------------------

    def write_snapshot(self, path: str | Path) -> None:
        with self._lock:
            write_snapshot_file(path, self._store.state, self._events, self._journal.last_seq)
