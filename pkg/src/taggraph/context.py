"""Bounded contextual maps: bipartite tag/resource graphs around a selection.

The graph grows ring by ring from the selected centers (plus any extra tag
seeds) through the triples of the active view. PERSONAL view walks only the
viewing user's triples; SOCIAL walks everyone's. Each frontier node admits
its most popular still-unseen neighbors, capped per node and for the whole
graph, and the final edge set is the induced tag-resource incidence between
admitted nodes. Every node carries a locality flag: LOCAL when it appears
in the viewer's own collection, GLOBAL otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import Snapshot, Triple, normalize_tag, validate_user
from .errors import FilterTooTight, UnknownCenter


class NodeKind(str, Enum):
    TAG = "tag"
    RESOURCE = "resource"


class ViewMode(str, Enum):
    PERSONAL = "personal"
    SOCIAL = "social"


class Locality(str, Enum):
    LOCAL = "local"
    GLOBAL = "global"


class NodeAction(str, Enum):
    EDIT_TITLE = "edit_title"
    CHANGE_TAGS = "change_tags"
    REMOVE = "remove"
    ADD_TO_COLLECTION = "add_to_collection"
    RENAME_TAG = "rename_tag"
    CENTER_HERE = "center_here"
    OPEN_URL = "open_url"


class DragEffect(str, Enum):
    TAGGED = "tagged"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True, order=True)
class NodeRef:
    kind: NodeKind
    id: str


@dataclass(frozen=True)
class FilterParams:
    """Expansion caps: rings from the center, per-node fan-out, whole-graph
    node budget, plus extra tag seeds merged into ring 0."""

    depth: int = 2
    max_neighbors: int = 10
    max_nodes: int = 60
    extra_tags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.depth < 1 or self.max_neighbors < 1 or self.max_nodes < 1:
            raise ValueError("filter caps must be positive")


@dataclass(frozen=True)
class ContextNode:
    ref: NodeRef
    locality: Locality
    weight: int
    title: str | None = None
    is_center: bool = False


@dataclass(frozen=True)
class ContextGraph:
    centers: tuple[NodeRef, ...]
    nodes: tuple[ContextNode, ...]
    edges: tuple[tuple[int, int], ...]  # (tag node index, resource node index)


class _ActiveView:
    """Adjacency and popularity over the active triple set."""

    def __init__(self, triples: list[Triple]):
        self.tag_resources: dict[str, set[str]] = {}
        self.resource_tags: dict[str, set[str]] = {}
        self.tag_pairs: dict[str, set[tuple[str, str]]] = {}
        self.resource_users: dict[str, set[str]] = {}
        for t in triples:
            self.tag_resources.setdefault(t.tag, set()).add(t.resource)
            self.resource_tags.setdefault(t.resource, set()).add(t.tag)
            self.tag_pairs.setdefault(t.tag, set()).add((t.user, t.resource))
            self.resource_users.setdefault(t.resource, set()).add(t.user)

    def has(self, ref: NodeRef) -> bool:
        if ref.kind is NodeKind.TAG:
            return ref.id in self.tag_resources
        return ref.id in self.resource_tags

    def weight(self, ref: NodeRef) -> int:
        """Tag weight: distinct (user, resource) pairs; resource weight:
        distinct annotating users."""
        if ref.kind is NodeKind.TAG:
            return len(self.tag_pairs.get(ref.id, ()))
        return len(self.resource_users.get(ref.id, ()))

    def neighbors(self, ref: NodeRef) -> list[NodeRef]:
        if ref.kind is NodeKind.TAG:
            return [
                NodeRef(NodeKind.RESOURCE, r)
                for r in self.tag_resources.get(ref.id, ())
            ]
        return [
            NodeRef(NodeKind.TAG, t) for t in self.resource_tags.get(ref.id, ())
        ]


def build_context(
    snap: Snapshot,
    user: str,
    centers: list[NodeRef],
    view: ViewMode = ViewMode.PERSONAL,
    filt: FilterParams = FilterParams(),
) -> ContextGraph:
    """Breadth-first expansion of the bipartite triple graph around centers.

    Ring 0 is the de-duplicated centers plus extra_tags (as tag nodes; seeds
    with no incident triples are dropped, but a true center with none raises
    UnknownCenter). Each frontier node, in admission order, admits its top
    max_neighbors unvisited neighbors ranked by weight descending with
    lexicographic tie-break, until depth rings are done or max_nodes is hit.
    """
    user = validate_user(user)
    if not centers:
        raise ValueError("at least one center is required")
    active = _ActiveView(
        snap.user_triples(user)
        if view is ViewMode.PERSONAL
        else list(snap.triples())
    )

    seed_list: list[NodeRef] = []
    for ref in centers:
        if ref not in seed_list:
            seed_list.append(ref)
    center_set = set(seed_list)
    for ref in center_set:
        if not active.has(ref):
            raise UnknownCenter(f"{ref.kind.value} {ref.id!r} has no triples in view")
    for label in sorted(filt.extra_tags):
        ref = NodeRef(NodeKind.TAG, normalize_tag(label))
        if ref not in center_set and ref not in seed_list and active.has(ref):
            seed_list.append(ref)
    if len(seed_list) > filt.max_nodes:
        raise FilterTooTight(
            f"max_nodes={filt.max_nodes} cannot admit {len(seed_list)} seeds"
        )

    admitted: dict[NodeRef, None] = {ref: None for ref in seed_list}
    frontier = list(seed_list)
    for _ in range(filt.depth):
        if not frontier or len(admitted) >= filt.max_nodes:
            break
        next_frontier: list[NodeRef] = []
        for ref in frontier:
            if len(admitted) >= filt.max_nodes:
                break
            candidates = [n for n in active.neighbors(ref) if n not in admitted]
            candidates.sort(key=lambda n: (-active.weight(n), n.id))
            for neighbor in candidates[: filt.max_neighbors]:
                if len(admitted) >= filt.max_nodes:
                    break
                admitted[neighbor] = None
                next_frontier.append(neighbor)
        frontier = next_frontier

    local_tags = {t.tag for t in snap.user_triples(user)}
    local_resources = {t.resource for t in snap.user_triples(user)}

    nodes: list[ContextNode] = []
    for ref in admitted:
        if ref.kind is NodeKind.TAG:
            is_local = ref.id in local_tags
            title = None
        else:
            is_local = ref.id in local_resources
            title = snap.title_for(ref.id, viewer=user)
        nodes.append(
            ContextNode(
                ref=ref,
                locality=Locality.LOCAL if is_local else Locality.GLOBAL,
                weight=active.weight(ref),
                title=title,
                is_center=ref in center_set,
            )
        )

    index = {node.ref: i for i, node in enumerate(nodes)}
    edges = sorted(
        (index[NodeRef(NodeKind.TAG, tag)], index[NodeRef(NodeKind.RESOURCE, r)])
        for tag, resources in active.tag_resources.items()
        if NodeRef(NodeKind.TAG, tag) in index
        for r in resources
        if NodeRef(NodeKind.RESOURCE, r) in index
    )
    return ContextGraph(
        centers=tuple(centers), nodes=tuple(nodes), edges=tuple(edges)
    )


_MENU = {
    (NodeKind.RESOURCE, Locality.LOCAL): [
        NodeAction.OPEN_URL,
        NodeAction.EDIT_TITLE,
        NodeAction.CHANGE_TAGS,
        NodeAction.REMOVE,
        NodeAction.CENTER_HERE,
    ],
    (NodeKind.RESOURCE, Locality.GLOBAL): [
        NodeAction.OPEN_URL,
        NodeAction.ADD_TO_COLLECTION,
        NodeAction.CENTER_HERE,
    ],
    (NodeKind.TAG, Locality.LOCAL): [
        NodeAction.CENTER_HERE,
        NodeAction.RENAME_TAG,
        NodeAction.REMOVE,
    ],
    (NodeKind.TAG, Locality.GLOBAL): [
        NodeAction.CENTER_HERE,
        NodeAction.ADD_TO_COLLECTION,
    ],
}


def node_actions(node: ContextNode) -> list[NodeAction]:
    """Contextual menu for a node: full control over local items, add-first
    for global ones."""
    return list(_MENU[(node.ref.kind, node.locality)])


def apply_drag(
    store,
    user: str,
    dragged: NodeRef,
    target: NodeRef,
    now: float | None = None,
) -> DragEffect:
    """Drag-drop shortcut: resource onto tag (or tag onto resource) tags the
    resource for this user, adding it to the local collection if needed.
    Any other pairing is UNSUPPORTED and changes nothing."""
    kinds = {dragged.kind, target.kind}
    if kinds != {NodeKind.TAG, NodeKind.RESOURCE}:
        return DragEffect.UNSUPPORTED
    tag = dragged.id if dragged.kind is NodeKind.TAG else target.id
    url = dragged.id if dragged.kind is NodeKind.RESOURCE else target.id
    store.add_annotation(user, url, title=None, tags=[tag], now=now)
    return DragEffect.TAGGED
