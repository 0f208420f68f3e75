"""taggraph: a social bookmark manager built on (user, tag, resource) triples.

Subsystems: triple store and popularity counts (:mod:`taggraph.core`),
sized tag clouds (:mod:`taggraph.cloud`), bounded contextual graphs
(:mod:`taggraph.context`), co-occurrence similarity and recommendations
(:mod:`taggraph.similarity`), clickstream session analytics
(:mod:`taggraph.analytics`), journal persistence (:mod:`taggraph.journal`)
and the HTTP facade (:mod:`taggraph.service`).
"""

from .errors import (
    EmptyTag,
    EmptyTagSet,
    FilterTooTight,
    InvalidUrl,
    InvalidUser,
    JournalCorrupt,
    NotInCollection,
    SnapshotVersionError,
    TagGraphError,
    UnknownCenter,
    UnknownTag,
)
from .core import (
    GLOBAL,
    FolksonomyStore,
    PopularityScope,
    Snapshot,
    Triple,
    canonicalize_url,
    normalize_tag,
    normalize_tag_set,
    validate_user,
)
from .cloud import CloudConfig, SizedTag, build_cloud
from .context import (
    ContextGraph,
    ContextNode,
    DragEffect,
    FilterParams,
    Locality,
    NodeAction,
    NodeKind,
    NodeRef,
    ViewMode,
    apply_drag,
    build_context,
    node_actions,
)
from .similarity import ScoredResource, ScoredTag, related_tags, recommend_tags, similar_resources
from .analytics import (
    CONTENT_ACTIONS,
    DEFAULT_GAP_SECONDS,
    Action,
    ClickEvent,
    Mode,
    ModeStats,
    Session,
    SessionStats,
    classify_click,
    compute_stats,
    event_from_dict,
    event_to_json,
    read_event_log,
    render_report,
    sessionize,
)
from .journal import Journal, JournalRecord, PersistentStore, read_journal

__version__ = "0.1.0"

__all__ = [
    "TagGraphError",
    "EmptyTag",
    "EmptyTagSet",
    "FilterTooTight",
    "InvalidUrl",
    "InvalidUser",
    "JournalCorrupt",
    "NotInCollection",
    "SnapshotVersionError",
    "UnknownCenter",
    "UnknownTag",
    "GLOBAL",
    "FolksonomyStore",
    "PopularityScope",
    "Snapshot",
    "Triple",
    "canonicalize_url",
    "normalize_tag",
    "normalize_tag_set",
    "validate_user",
    "CloudConfig",
    "SizedTag",
    "build_cloud",
    "ContextGraph",
    "ContextNode",
    "DragEffect",
    "FilterParams",
    "Locality",
    "NodeAction",
    "NodeKind",
    "NodeRef",
    "ViewMode",
    "apply_drag",
    "build_context",
    "node_actions",
    "ScoredResource",
    "ScoredTag",
    "related_tags",
    "recommend_tags",
    "similar_resources",
    "Action",
    "CONTENT_ACTIONS",
    "ClickEvent",
    "DEFAULT_GAP_SECONDS",
    "Mode",
    "ModeStats",
    "Session",
    "SessionStats",
    "classify_click",
    "compute_stats",
    "event_from_dict",
    "event_to_json",
    "read_event_log",
    "render_report",
    "sessionize",
    "Journal",
    "JournalRecord",
    "PersistentStore",
    "read_journal",
]
