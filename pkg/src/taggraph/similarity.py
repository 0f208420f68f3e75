"""Co-occurrence similarity and tag recommendation.

Similarity between two tags is the set cosine of the resource sets they
appear on (and symmetrically for resources over their tag sets):

    sim(a, b) = |A ∩ B| / sqrt(|A| * |B|)

Recommendation support counts distinct annotating users rather than raw
triples, so one user piling tags onto a page cannot dominate the ranking.
The measure lives behind this module so a learned one can replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from urllib.parse import urlsplit

from .core import Snapshot, canonicalize_url, normalize_tag, validate_user


@dataclass(frozen=True)
class ScoredTag:
    label: str
    score: float  # cosine in [0, 1], or a positive distinct-user count


@dataclass(frozen=True)
class ScoredResource:
    resource: str
    score: float


def _set_cosine(a: set, b: set) -> float:
    inter = len(a & b)
    if not inter:
        return 0.0
    return inter / sqrt(len(a) * len(b))


def related_tags(snap: Snapshot, tag: str, k: int) -> list[ScoredTag]:
    """Top-k tags by resource-set cosine with the given tag; the tag itself
    and zero-overlap tags are excluded. Unknown tag -> empty list."""
    label = normalize_tag(tag)
    mine = snap.global_resources_with(label)
    if not mine:
        return []
    scored = []
    for other in {t for (_, t, _) in snap.entries} - {label}:
        score = _set_cosine(mine, snap.global_resources_with(other))
        if score > 0.0:
            scored.append(ScoredTag(other, score))
    scored.sort(key=lambda st: (-st.score, st.label))
    return scored[:k]


def similar_resources(snap: Snapshot, resource: str, k: int) -> list[ScoredResource]:
    """Top-k resources by tag-set cosine with the given resource."""
    url = canonicalize_url(resource)
    mine = snap.global_tags_on(url)
    if not mine:
        return []
    scored = []
    for other in snap.resources() - {url}:
        score = _set_cosine(mine, snap.global_tags_on(other))
        if score > 0.0:
            scored.append(ScoredResource(other, score))
    scored.sort(key=lambda sr: (-sr.score, sr.resource))
    return scored[:k]


def _support(snap: Snapshot, url: str) -> dict[str, int]:
    """Distinct annotating users per tag on a resource."""
    users_per_tag: dict[str, set[str]] = {}
    for (u, t, r) in snap.entries:
        if r == url:
            users_per_tag.setdefault(t, set()).add(u)
    return {t: len(users) for t, users in users_per_tag.items()}


def recommend_tags(snap: Snapshot, user: str, url: str, k: int) -> list[ScoredTag]:
    """Suggest tags for a URL from the global folksonomy.

    Tags already on the URL rank by distinct-user support, minus whatever
    the user has on it already. A URL nobody annotated falls back to the
    best same-host resource (cosine first, then global popularity, then
    URL order) and borrows its top tags; with no same-host candidate the
    list is empty and the caller is in cold-start territory.
    """
    user = validate_user(user)
    url = canonicalize_url(url)
    support = _support(snap, url)
    if not support:
        proxy = _same_host_proxy(snap, url)
        if proxy is None:
            return []
        support = _support(snap, proxy)
    already = snap.user_tags_on(user, url)
    ranked = sorted(
        ((t, c) for t, c in support.items() if t not in already),
        key=lambda tc: (-tc[1], tc[0]),
    )
    return [ScoredTag(t, c) for t, c in ranked[:k]]


def _same_host_proxy(snap: Snapshot, url: str) -> str | None:
    host = urlsplit(url).hostname
    candidates = [r for r in snap.resources() if r != url and urlsplit(r).hostname == host]
    if not candidates:
        return None
    sims = {sr.resource: sr.score for sr in similar_resources(snap, url, len(candidates))}
    candidates.sort(
        key=lambda r: (-sims.get(r, 0.0), -len(snap.annotating_users(r)), r)
    )
    return candidates[0]
