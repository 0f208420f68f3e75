"""Domain errors shared across the bookmark manager modules.

Every error carries a stable machine-readable ``code`` so the HTTP layer
can map it onto an ApiError body without string matching.
"""

from __future__ import annotations


class TagGraphError(Exception):
    """Base class for all domain errors."""

    code = "error"


class EmptyTag(TagGraphError):
    """A tag normalizes to the empty string."""

    code = "empty_tag"


class EmptyTagSet(TagGraphError):
    """Every supplied tag normalized away; an annotation needs at least one."""

    code = "empty_tag_set"


class InvalidUrl(TagGraphError):
    """No scheme/host can be parsed out of the supplied URL text."""

    code = "invalid_url"


class InvalidUser(TagGraphError):
    """User ids must be non-empty and whitespace-free."""

    code = "invalid_user"


class NotInCollection(TagGraphError):
    """The user has no annotation on this resource; add it first."""

    code = "not_in_collection"


class UnknownTag(TagGraphError):
    """The user has no annotation with this tag."""

    code = "unknown_tag"


class UnknownCenter(TagGraphError):
    """A requested graph center has no incident triples in the active view."""

    code = "unknown_center"


class FilterTooTight(TagGraphError):
    """max_nodes is smaller than the seed ring; the caps cannot be honored."""

    code = "filter_too_tight"


class JournalCorrupt(TagGraphError):
    """The journal file contains an unreadable or out-of-order record."""

    code = "journal_corrupt"

    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class SnapshotVersionError(TagGraphError):
    """A snapshot file was written by an incompatible format version."""

    code = "snapshot_version"
