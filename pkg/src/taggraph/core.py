"""Canonical storage of (user, tag, resource) annotation triples.

The triple is the atomic unit: one user attaching one tag to one web
resource at some time. This module owns normalization of the three legs,
the mutation operations (annotate, remove, retag, retitle, rename), and
the popularity counts every other module is built on.

Concurrency contract: a single writer mutates at a time while readers get
immutable snapshots. Mutations build a fresh :class:`Snapshot` under the
store lock and swap it in atomically, so a reader never observes a torn
state no matter which thread it runs on.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence
from urllib.parse import urlsplit, urlunsplit

from .errors import (
    EmptyTag,
    EmptyTagSet,
    InvalidUrl,
    InvalidUser,
    NotInCollection,
    UnknownTag,
)

TripleKey = tuple[str, str, str]  # (user, tag, resource)


# ---------------------------------------------------------------------------
# Normalization of the three legs
# ---------------------------------------------------------------------------

def normalize_tag(raw: str) -> str:
    """Normalize a tag label: trim, collapse inner whitespace, lowercase.

    Raises EmptyTag if nothing is left.
    """
    label = " ".join(raw.split()).casefold()
    if not label:
        raise EmptyTag(f"tag {raw!r} normalizes to nothing")
    return label


def normalize_tag_set(raw_tags: Iterable[str]) -> list[str]:
    """Normalize and de-duplicate tags, keeping first-occurrence order.

    Tags that normalize away are dropped; if all of them do, raises
    EmptyTagSet.
    """
    labels: list[str] = []
    for raw in raw_tags:
        try:
            label = normalize_tag(raw)
        except EmptyTag:
            continue
        if label not in labels:
            labels.append(label)
    if not labels:
        raise EmptyTagSet("no tags left after normalization")
    return labels


def canonicalize_url(raw: str) -> str:
    """Canonicalize a URL: lowercase scheme/host, drop fragment, '/' path.

    Scheme-less input like ``engadget.com/reviews`` is accepted and gets
    ``http://`` prepended, provided the host looks like one (dotted or
    localhost). An empty path canonicalizes to ``/`` so ``http://a.com``
    and ``http://a.com/`` collapse to the same id.
    """
    text = raw.strip()
    if not text:
        raise InvalidUrl("empty URL")
    defaulted = False
    try:
        parts = urlsplit(text)
    except ValueError:
        parts = None
    if parts is None or not (parts.scheme and parts.netloc):
        try:
            parts = urlsplit("http://" + text)
        except ValueError as exc:
            raise InvalidUrl(f"{raw!r}: {exc}") from None
        defaulted = True
    try:
        host = parts.hostname
        port = parts.port
    except ValueError as exc:
        raise InvalidUrl(f"{raw!r}: {exc}") from None
    if not parts.scheme or not host or any(ch.isspace() for ch in parts.netloc):
        raise InvalidUrl(f"{raw!r} has no parseable scheme/host")
    if defaulted and host != "localhost" and "." not in host:
        raise InvalidUrl(f"{raw!r} does not look like a URL")
    userinfo, _, _ = parts.netloc.rpartition("@")
    if ":" in host:  # bare IPv6 address; restore brackets
        host = f"[{host}]"
    netloc = host if port is None else f"{host}:{port}"
    if userinfo:
        netloc = f"{userinfo}@{netloc}"
    path = parts.path or "/"
    return urlunsplit((parts.scheme.lower(), netloc, path, parts.query, ""))


def validate_user(raw: str) -> str:
    """User ids are opaque but must be non-empty and whitespace-free."""
    if not raw or any(ch.isspace() for ch in raw):
        raise InvalidUser(f"bad user id {raw!r}")
    return raw


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Triple:
    """One (user, tag, resource) annotation, timestamped in epoch seconds."""

    user: str
    tag: str
    resource: str
    created_at: float

    @property
    def key(self) -> TripleKey:
        return (self.user, self.tag, self.resource)


@dataclass(frozen=True)
class PopularityScope:
    """PERSONAL(user) or GLOBAL counting scope. ``user is None`` = global."""

    user: str | None = None

    @property
    def is_global(self) -> bool:
        return self.user is None

    @classmethod
    def personal(cls, user: str) -> "PopularityScope":
        return cls(validate_user(user))


GLOBAL = PopularityScope()


@dataclass(frozen=True)
class Snapshot:
    """Immutable view of the whole folksonomy at one instant.

    ``entries`` is keyed by (user, tag, resource) which enforces the
    at-most-one-triple-per-key invariant structurally; insertion order is
    the journal order. ``titles`` maps resource -> user -> title.
    Never mutate a snapshot; the store builds new ones copy-on-write.
    """

    entries: dict[TripleKey, Triple] = field(default_factory=dict)
    titles: dict[str, dict[str, str]] = field(default_factory=dict)

    # -- basic views --------------------------------------------------------

    def triples(self) -> Iterator[Triple]:
        return iter(self.entries.values())

    def user_triples(self, user: str) -> list[Triple]:
        return [t for t in self.entries.values() if t.user == user]

    def user_tags_on(self, user: str, resource: str) -> set[str]:
        return {
            tag for (u, tag, r) in self.entries if u == user and r == resource
        }

    def user_has_resource(self, user: str, resource: str) -> bool:
        return any(u == user and r == resource for (u, _, r) in self.entries)

    def user_has_tag(self, user: str, tag: str) -> bool:
        return any(u == user and t == tag for (u, t, _) in self.entries)

    def last_created_at(self, user: str) -> float:
        """Latest timestamp in this user's journal (−inf when empty)."""
        return max(
            (t.created_at for t in self.entries.values() if t.user == user),
            default=float("-inf"),
        )

    def resources(self) -> set[str]:
        return {r for (_, _, r) in self.entries}

    def global_tags_on(self, resource: str) -> set[str]:
        return {t for (_, t, r) in self.entries if r == resource}

    def global_resources_with(self, tag: str) -> set[str]:
        return {r for (_, t, r) in self.entries if t == tag}

    def annotating_users(self, resource: str) -> set[str]:
        return {u for (u, _, r) in self.entries if r == resource}

    def title_for(self, resource: str, viewer: str | None = None) -> str | None:
        """The viewer's own title when set, else the lexicographically
        first user's title, else None."""
        per_user = self.titles.get(resource)
        if not per_user:
            return None
        if viewer is not None and viewer in per_user:
            return per_user[viewer]
        return per_user[min(per_user)]

    # -- popularity ---------------------------------------------------------

    def tag_counts(self, scope: PopularityScope) -> dict[str, int]:
        """PERSONAL: resources of that user per tag. GLOBAL: distinct
        (user, resource) pairs per tag."""
        counts: dict[str, int] = {}
        for (u, tag, _) in self.entries:
            if scope.is_global or u == scope.user:
                counts[tag] = counts.get(tag, 0) + 1
        return counts

    def resources_with_tag(self, scope: PopularityScope, tag: str) -> set[str]:
        return {
            r
            for (u, t, r) in self.entries
            if t == tag and (scope.is_global or u == scope.user)
        }

    def resources_for_tags(
        self,
        scope: PopularityScope,
        tags: Iterable[str],
        conjunctive: bool = False,
    ) -> list[tuple[str, int]]:
        """Resources carrying ALL (conjunctive) or ANY of the tags in scope.

        Weight is the matched-tag count for a personal scope and the number
        of distinct users annotating the resource with a queried tag for the
        global scope. Sorted by weight descending, URL ascending.
        """
        wanted = set(tags)
        if not wanted:
            raise EmptyTagSet("resources_for_tags needs at least one tag")
        per_tag = {t: self.resources_with_tag(scope, t) for t in wanted}
        matched: set[str] = (
            set.intersection(*per_tag.values())
            if conjunctive
            else set.union(*per_tag.values())
        )
        weighted: list[tuple[str, int]] = []
        for r in matched:
            if scope.is_global:
                weight = len(
                    {
                        u
                        for (u, t, r2) in self.entries
                        if r2 == r and t in wanted
                    }
                )
            else:
                weight = sum(
                    1
                    for t in wanted
                    if (scope.user, t, r) in self.entries
                )
            weighted.append((r, weight))
        weighted.sort(key=lambda pair: (-pair[1], pair[0]))
        return weighted


# ---------------------------------------------------------------------------
# The store
# ---------------------------------------------------------------------------

class FolksonomyStore:
    """Mutable triple store with snapshot reads and serialized writes.

    ``clock`` supplies timestamps when a mutator isn't given ``now``
    explicitly; created_at is clamped to the user's latest prior timestamp
    so per-user journal order stays non-decreasing.
    """

    def __init__(self, clock: Callable[[], float] = time.time):
        self._clock = clock
        self._lock = threading.Lock()
        self._state = Snapshot()

    @property
    def state(self) -> Snapshot:
        return self._state

    def _restore(self, snapshot: Snapshot) -> None:
        """Roll the store back to an earlier snapshot (journal failure)."""
        with self._lock:
            self._state = snapshot

    def _stamp(self, snap: Snapshot, user: str, now: float | None) -> float:
        at = self._clock() if now is None else now
        return max(at, snap.last_created_at(user))

    # -- mutations ----------------------------------------------------------

    def add_annotation(
        self,
        user: str,
        url: str,
        title: str | None,
        tags: Sequence[str],
        now: float | None = None,
    ) -> list[Triple]:
        """Annotate a resource with tags, returning only newly created
        triples (pairs already present are silently skipped).

        ``title`` is recorded for this user; pass None to leave any stored
        title untouched.
        """
        user = validate_user(user)
        resource = canonicalize_url(url)
        labels = normalize_tag_set(tags)
        with self._lock:
            snap = self._state
            at = self._stamp(snap, user, now)
            entries = dict(snap.entries)
            created: list[Triple] = []
            for label in labels:
                key = (user, label, resource)
                if key not in entries:
                    triple = Triple(user, label, resource, at)
                    entries[key] = triple
                    created.append(triple)
            titles = snap.titles
            if title is not None:
                titles = {**titles, resource: {**titles.get(resource, {}), user: title}}
            self._state = Snapshot(entries, titles)
            return created

    def remove_resource(self, user: str, url: str) -> list[Triple]:
        """Drop every triple this user has on the resource (and the user's
        title entry). Returns the removed triples; absent resource -> []."""
        user = validate_user(user)
        resource = canonicalize_url(url)
        with self._lock:
            snap = self._state
            removed = [
                t
                for (u, _, r), t in snap.entries.items()
                if u == user and r == resource
            ]
            if not removed and user not in snap.titles.get(resource, {}):
                return []
            entries = {
                k: t
                for k, t in snap.entries.items()
                if not (k[0] == user and k[2] == resource)
            }
            titles = dict(snap.titles)
            per_user = dict(titles.get(resource, {}))
            per_user.pop(user, None)
            if per_user:
                titles[resource] = per_user
            else:
                titles.pop(resource, None)
            self._state = Snapshot(entries, titles)
            return removed

    def set_tags(
        self,
        user: str,
        url: str,
        tags: Sequence[str],
        now: float | None = None,
    ) -> tuple[list[str], list[str]]:
        """Make the user's tag set on the resource equal the input set.

        Returns (added, removed) labels, each sorted. Raises
        NotInCollection when the user has no annotation on the resource.
        """
        user = validate_user(user)
        resource = canonicalize_url(url)
        labels = set(normalize_tag_set(tags))
        with self._lock:
            snap = self._state
            current = snap.user_tags_on(user, resource)
            if not current:
                raise NotInCollection(f"{user} has no annotation on {resource}")
            added = sorted(labels - current)
            removed = sorted(current - labels)
            if not added and not removed:
                return ([], [])
            at = self._stamp(snap, user, now)
            entries = {
                k: t
                for k, t in snap.entries.items()
                if not (k[0] == user and k[2] == resource and k[1] in removed)
            }
            for label in added:
                entries[(user, label, resource)] = Triple(user, label, resource, at)
            self._state = Snapshot(entries, snap.titles)
            return (added, removed)

    def set_title(self, user: str, url: str, title: str) -> None:
        """Set this user's title for a resource they have annotated."""
        user = validate_user(user)
        resource = canonicalize_url(url)
        with self._lock:
            snap = self._state
            if not snap.user_has_resource(user, resource):
                raise NotInCollection(f"{user} has no annotation on {resource}")
            titles = {**snap.titles, resource: {**snap.titles.get(resource, {}), user: title}}
            self._state = Snapshot(snap.entries, titles)

    def rename_tag(self, user: str, old: str, new: str) -> int:
        """Rewrite every (user, old, r) triple to the new label, keeping the
        original timestamps; collisions with existing (user, new, r)
        collapse. Returns the number of rewritten triples."""
        user = validate_user(user)
        old_label = normalize_tag(old)
        new_label = normalize_tag(new)
        with self._lock:
            snap = self._state
            affected = [
                t
                for (u, tag, _), t in snap.entries.items()
                if u == user and tag == old_label
            ]
            if not affected:
                raise UnknownTag(f"{user} has no tag {old_label!r}")
            if new_label == old_label:
                return 0
            entries = dict(snap.entries)
            for t in affected:
                del entries[(user, old_label, t.resource)]
                new_key = (user, new_label, t.resource)
                if new_key not in entries:
                    entries[new_key] = Triple(user, new_label, t.resource, t.created_at)
            self._state = Snapshot(entries, snap.titles)
            return len(affected)

    # -- raw application, used by journal replay ----------------------------

    def _raw_add(self, user: str, tag: str, resource: str, at: float) -> None:
        with self._lock:
            entries = dict(self._state.entries)
            entries[(user, tag, resource)] = Triple(user, tag, resource, at)
            self._state = Snapshot(entries, self._state.titles)

    def _raw_remove(self, user: str, tag: str, resource: str) -> None:
        with self._lock:
            entries = dict(self._state.entries)
            entries.pop((user, tag, resource), None)
            self._state = Snapshot(entries, self._state.titles)

    def _raw_set_title(self, user: str, resource: str, title: str | None) -> None:
        with self._lock:
            titles = dict(self._state.titles)
            per_user = dict(titles.get(resource, {}))
            if title is None:
                per_user.pop(user, None)
            else:
                per_user[user] = title
            if per_user:
                titles[resource] = per_user
            else:
                titles.pop(resource, None)
            self._state = Snapshot(self._state.entries, titles)

    # -- reads (delegate to the snapshot) ------------------------------------

    def tag_counts(self, scope: PopularityScope) -> dict[str, int]:
        return self.state.tag_counts(scope)

    def resources_for_tags(
        self,
        scope: PopularityScope,
        tags: Iterable[str],
        conjunctive: bool = False,
    ) -> list[tuple[str, int]]:
        return self.state.resources_for_tags(scope, tags, conjunctive)
