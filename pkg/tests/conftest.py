from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from taggraph import Action, ClickEvent, FolksonomyStore, Mode, TagGraphError

USERS = ["alice", "bob", "carol", "dave"]
TAGS = ["tech", "blog", "news", "design", "code", "video", "music", "web"]
URLS = [f"http://site{i}.example/" for i in range(8)]

MODES = ["list", "viz"]
ACTIONS = [
    "tag_select",
    "resource_select",
    "edit",
    "add",
    "remove",
    "filter_change",
    "view_switch",
    "mode_switch",
    "other",
]


def store_from(triples):
    """Build a store from plain (user, tag, resource) tuples.

    URLs in the corpus above are already canonical, so the store's entries
    line up one-to-one with the input tuples.
    """
    store = FolksonomyStore(clock=lambda: 0.0)
    for i, (user, tag, url) in enumerate(triples):
        store.add_annotation(user, url, None, [tag], now=float(i))
    return store


triples_st = st.lists(
    st.tuples(st.sampled_from(USERS), st.sampled_from(TAGS), st.sampled_from(URLS)),
    min_size=1,
    max_size=50,
    unique=True,
)


def random_triples(rng: random.Random, max_size: int = 50):
    n = rng.randint(1, max_size)
    seen = set()
    out = []
    for _ in range(n):
        t = (rng.choice(USERS), rng.choice(TAGS), rng.choice(URLS))
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def random_events(rng: random.Random, max_size: int = 120):
    n = rng.randint(1, max_size)
    out = []
    for _ in range(n):
        out.append(
            (
                rng.choice(USERS[:3]),
                float(rng.randint(0, 12000)),
                rng.choice(MODES),
                rng.choice(ACTIONS),
            )
        )
    return out


def to_click_events(rows):
    return [ClickEvent(u, at, Mode(m), Action(a)) for (u, at, m, a) in rows]


events_st = st.lists(
    st.tuples(
        st.sampled_from(USERS[:3]),
        st.integers(min_value=0, max_value=12000).map(float),
        st.sampled_from(MODES),
        st.sampled_from(ACTIONS),
    ),
    min_size=1,
    max_size=80,
)


def apply_random_ops(pstore, rng: random.Random, n_ops: int):
    """Drive a persistent store through a random mutation sequence.

    Business-rule refusals (pick a resource the user lacks, rename a tag
    they never used) are expected along the way and simply skipped.
    """
    for i in range(n_ops):
        op = rng.randrange(6)
        user = rng.choice(USERS)
        url = rng.choice(URLS)
        try:
            if op == 0:
                tags = [rng.choice(TAGS) for _ in range(rng.randint(1, 3))]
                title = rng.choice([None, f"T{rng.randrange(5)}"])
                pstore.add_annotation(user, url, title, tags, now=float(i))
            elif op == 1:
                pstore.remove_resource(user, url)
            elif op == 2:
                tags = [rng.choice(TAGS) for _ in range(rng.randint(1, 3))]
                pstore.set_tags(user, url, tags, now=float(i))
            elif op == 3:
                pstore.set_title(user, url, f"Title {rng.randrange(9)}")
            elif op == 4:
                pstore.rename_tag(user, rng.choice(TAGS), rng.choice(TAGS))
            else:
                pstore.record_events(
                    [
                        ClickEvent(
                            user,
                            float(i),
                            Mode(rng.choice(MODES)),
                            Action(rng.choice(ACTIONS)),
                        )
                    ]
                )
        except TagGraphError:
            pass


def state_fingerprint(pstore):
    """Everything that must survive a restart, in comparable form."""
    snap = pstore.state
    return (
        sorted((t.user, t.tag, t.resource, t.created_at) for t in snap.triples()),
        {r: dict(per) for r, per in snap.titles.items()},
        [(e.user, e.at, e.mode.value, e.action.value) for e in pstore.events],
    )


# Thirty clicks across five users exercising every boundary rule: explicit
# mode-switch clicks, bare mode changes, inactivity splits, a singleton
# session, and a stream that ends on a switch click.  The expected per-mode
# statistics below were worked out by hand from the boundary rules.
THIRTY_EVENT_ROWS = [
    ("alice", 0.0, "viz", "tag_select"),
    ("alice", 10.0, "viz", "resource_select"),
    ("alice", 30.0, "viz", "edit"),
    ("alice", 40.0, "viz", "filter_change"),
    ("alice", 60.0, "viz", "mode_switch"),
    ("alice", 70.0, "list", "tag_select"),
    ("alice", 90.0, "list", "resource_select"),
    ("alice", 100.0, "list", "other"),
    ("alice", 5000.0, "list", "tag_select"),
    ("alice", 5020.0, "list", "add"),
    ("bob", 0.0, "list", "tag_select"),
    ("bob", 15.0, "list", "view_switch"),
    ("bob", 45.0, "list", "resource_select"),
    ("bob", 60.0, "viz", "tag_select"),
    ("bob", 75.0, "viz", "resource_select"),
    ("bob", 95.0, "viz", "edit"),
    ("bob", 120.0, "viz", "remove"),
    ("bob", 130.0, "viz", "other"),
    ("bob", 9000.0, "viz", "tag_select"),
    ("bob", 9005.0, "viz", "add"),
    ("bob", 9010.0, "viz", "resource_select"),
    ("carol", 100.0, "viz", "tag_select"),
    ("dave", 0.0, "list", "tag_select"),
    ("dave", 20.0, "list", "edit"),
    ("dave", 50.0, "list", "mode_switch"),
    ("erin", 0.0, "viz", "resource_select"),
    ("erin", 30.0, "viz", "tag_select"),
    ("erin", 2000.0, "viz", "other"),
    ("erin", 2010.0, "viz", "edit"),
    ("erin", 2040.0, "viz", "add"),
]

THIRTY_EXPECTED = {
    "list": dict(
        n_sessions=4,
        mean_duration_sec=145 / 4,
        mean_clicks=11 / 4,
        content_fraction=8 / 11,
        switch_fraction=2 / 4,
    ),
    "viz": dict(
        n_sessions=6,
        mean_duration_sec=35.0,
        mean_clicks=19 / 6,
        content_fraction=15 / 19,
        switch_fraction=1 / 6,
    ),
}


@pytest.fixture
def demo_store():
    """Small two-user corpus reused across module tests."""
    store = FolksonomyStore(clock=lambda: 0.0)
    rows = [
        ("alice", "tech", "http://a.example/", "Site A"),
        ("alice", "news", "http://a.example/", None),
        ("alice", "tech", "http://b.example/", "Site B"),
        ("bob", "tech", "http://a.example/", "A (bob)"),
        ("bob", "blog", "http://c.example/", "Site C"),
    ]
    for i, (user, tag, url, title) in enumerate(rows):
        store.add_annotation(user, url, title, [tag], now=float(i))
    return store
