"""Clickstream sessionization and the list-vs-visualization metric bundle.

A session is a maximal run of one user's clicks in one interface mode with
no inter-click silence above the inactivity gap. A mode-switch click closes
the session it belongs to (the click is stamped with the mode being left);
a bare mode change between consecutive clicks closes the previous session
too. Timeout splits do not count as switches.

Event log wire format: one JSON object per line, UTF-8, keys ``user``
(text), ``at`` (integer epoch seconds), ``mode`` ("list"|"viz") and
``action`` (lowercase action name).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

DEFAULT_GAP_SECONDS = 1800.0  # conventional 30-minute web-analytics cutoff


class Mode(str, Enum):
    LIST = "list"
    VIZ = "viz"


class Action(str, Enum):
    TAG_SELECT = "tag_select"
    RESOURCE_SELECT = "resource_select"
    EDIT = "edit"
    ADD = "add"
    REMOVE = "remove"
    VIEW_SWITCH = "view_switch"
    FILTER_CHANGE = "filter_change"
    MODE_SWITCH = "mode_switch"
    OTHER = "other"


#: Tag selection, resource selection and content editing count as
#: content-related; view/mode/filter plumbing does not.
CONTENT_ACTIONS = frozenset(
    {Action.TAG_SELECT, Action.RESOURCE_SELECT, Action.EDIT, Action.ADD, Action.REMOVE}
)


@dataclass(frozen=True)
class ClickEvent:
    user: str
    at: float
    mode: Mode
    action: Action


@dataclass(frozen=True)
class Session:
    user: str
    mode: Mode
    events: tuple[ClickEvent, ...]
    ended_by_switch: bool

    @property
    def duration(self) -> float:
        return self.events[-1].at - self.events[0].at


@dataclass(frozen=True)
class ModeStats:
    n_sessions: int
    mean_duration_sec: float
    mean_clicks: float
    content_fraction: float
    switch_fraction: float


@dataclass(frozen=True)
class SessionStats:
    list_mode: ModeStats
    viz_mode: ModeStats

    def for_mode(self, mode: Mode) -> ModeStats:
        return self.list_mode if mode is Mode.LIST else self.viz_mode


def classify_click(event: ClickEvent) -> bool:
    """True iff the click is content-related."""
    return event.action in CONTENT_ACTIONS


def _sort_key(e: ClickEvent):
    # Full key, not just time: reordered input with cross-mode timestamp
    # ties must still sessionize identically.
    return (e.at, e.mode.value, e.action.value)


def sessionize(
    events: Sequence[ClickEvent], gap: float = DEFAULT_GAP_SECONDS
) -> list[Session]:
    """Partition events into per-user, per-mode sessions.

    A new session starts on the first event for a user, after an
    inter-event silence longer than ``gap`` seconds, after a mode change,
    or after a MODE_SWITCH click (which belongs to the session it closes).
    Boundary precedence: switch click, then timeout, then bare mode change;
    only the timeout leaves ended_by_switch False.
    """
    if gap <= 0:
        raise ValueError("gap must be positive")
    sessions: list[Session] = []
    for user in sorted({e.user for e in events}):
        run: list[ClickEvent] = []
        for event in sorted((e for e in events if e.user == user), key=_sort_key):
            if run:
                prev = run[-1]
                if prev.action is Action.MODE_SWITCH:
                    sessions.append(_close(run, ended_by_switch=True))
                    run = []
                elif event.at - prev.at > gap:
                    sessions.append(_close(run, ended_by_switch=False))
                    run = []
                elif event.mode is not prev.mode:
                    sessions.append(_close(run, ended_by_switch=True))
                    run = []
            run.append(event)
        if run:
            sessions.append(
                _close(run, ended_by_switch=run[-1].action is Action.MODE_SWITCH)
            )
    return sessions


def _close(run: list[ClickEvent], ended_by_switch: bool) -> Session:
    return Session(
        user=run[0].user,
        mode=run[0].mode,
        events=tuple(run),
        ended_by_switch=ended_by_switch,
    )


def compute_stats(sessions: Iterable[Session]) -> SessionStats:
    """Per-mode session counts, mean duration/clicks, pooled content click
    fraction, and fraction of sessions ended by a mode switch."""
    per_mode = {}
    for mode in Mode:
        mine = [s for s in sessions if s.mode is mode]
        if not mine:
            per_mode[mode] = ModeStats(0, 0.0, 0.0, 0.0, 0.0)
            continue
        all_events = [e for s in mine for e in s.events]
        per_mode[mode] = ModeStats(
            n_sessions=len(mine),
            mean_duration_sec=sum(s.duration for s in mine) / len(mine),
            mean_clicks=len(all_events) / len(mine),
            content_fraction=sum(classify_click(e) for e in all_events)
            / len(all_events),
            switch_fraction=sum(s.ended_by_switch for s in mine) / len(mine),
        )
    return SessionStats(list_mode=per_mode[Mode.LIST], viz_mode=per_mode[Mode.VIZ])


_REPORT_ROWS = [
    ("Number of sessions", lambda m: f"{m.n_sessions:,}"),
    ("Time per session (sec)", lambda m: f"{m.mean_duration_sec:.1f}"),
    ("Clicks per session", lambda m: f"{m.mean_clicks:.1f}"),
    ("Content-related clicks", lambda m: f"{m.content_fraction * 100:.1f}%"),
    ("Switch to other mode", lambda m: f"{m.switch_fraction * 100:.1f}%"),
]


def render_report(stats: SessionStats) -> str:
    """Plain-text two-column comparison table of the five session metrics."""
    lines = ["Mode | List | Visualization"]
    for label, fmt in _REPORT_ROWS:
        lines.append(f"{label} | {fmt(stats.list_mode)} | {fmt(stats.viz_mode)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------

def event_to_json(event: ClickEvent) -> str:
    at = int(event.at) if float(event.at).is_integer() else event.at
    return json.dumps(
        {
            "user": event.user,
            "at": at,
            "mode": event.mode.value,
            "action": event.action.value,
        },
        ensure_ascii=False,
    )


def event_from_dict(obj: dict) -> ClickEvent:
    return ClickEvent(
        user=str(obj["user"]),
        at=float(obj["at"]),
        mode=Mode(obj["mode"]),
        action=Action(obj["action"]),
    )


def read_event_log(lines: Iterable[str]) -> list[ClickEvent]:
    """Parse one-JSON-object-per-line event log text; blank lines skipped."""
    events = []
    for line in lines:
        line = line.strip()
        if line:
            events.append(event_from_dict(json.loads(line)))
    return events
