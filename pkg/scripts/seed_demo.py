#!/usr/bin/env python3
"""Seed a journal with a small demo corpus.

Writes a handful of users, bookmarks and click events so the service and
the web UI have something to show right away:

    python3 scripts/seed_demo.py --journal data/journal.jsonl
    python3 scripts/serve.py --journal data/journal.jsonl
"""

import argparse
import time

from taggraph import Action, ClickEvent, Mode, PersistentStore

BOOKMARKS = [
    # user, url, title, tags
    ("maya", "engadget.com", "Engadget", ["tech", "gadgets", "news"]),
    ("maya", "arstechnica.com", "Ars Technica", ["tech", "science"]),
    ("maya", "news.ycombinator.com", "Hacker News", ["tech", "programming"]),
    ("maya", "xkcd.com", "xkcd", ["comics", "science"]),
    ("li", "engadget.com", "Engadget - gadget reviews", ["tech", "reviews"]),
    ("li", "arstechnica.com", None, ["tech", "news"]),
    ("li", "smashingmagazine.com", "Smashing Magazine", ["design", "web"]),
    ("li", "css-tricks.com", "CSS-Tricks", ["design", "web", "programming"]),
    ("noor", "news.ycombinator.com", "HN", ["programming", "news"]),
    ("noor", "lobste.rs", "Lobsters", ["programming"]),
    ("noor", "engadget.com", None, ["gadgets"]),
    ("noor", "xkcd.com", "xkcd comics", ["comics"]),
]

CLICKS = [
    # user, offset seconds, mode, action
    ("maya", 0, "viz", "tag_select"),
    ("maya", 20, "viz", "resource_select"),
    ("maya", 55, "viz", "add"),
    ("maya", 80, "viz", "mode_switch"),
    ("maya", 95, "list", "tag_select"),
    ("maya", 120, "list", "resource_select"),
    ("li", 0, "list", "tag_select"),
    ("li", 30, "list", "edit"),
    ("li", 70, "list", "mode_switch"),
    ("li", 90, "viz", "tag_select"),
    ("li", 130, "viz", "resource_select"),
    ("noor", 0, "viz", "tag_select"),
    ("noor", 45, "viz", "filter_change"),
    ("noor", 60, "viz", "resource_select"),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--journal", default="data/journal.jsonl")
    args = parser.parse_args()

    pstore = PersistentStore.open(args.journal)
    if pstore.state.entries:
        print(f"{args.journal} already has data; leaving it alone")
        return 1

    base = time.time() - 3600
    for i, (user, url, title, tags) in enumerate(BOOKMARKS):
        pstore.add_annotation(user, url, title, tags, now=base + 10 * i)
    pstore.record_events(
        ClickEvent(user, base + offset, Mode(mode), Action(action))
        for user, offset, mode, action in CLICKS
    )
    pstore.close()
    print(
        f"seeded {len(BOOKMARKS)} bookmarks and {len(CLICKS)} click events "
        f"into {args.journal}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
