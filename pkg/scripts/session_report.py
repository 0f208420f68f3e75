#!/usr/bin/env python3
"""Sessionize a click-event log and print the list-vs-viz comparison table.

The input is one JSON object per line with keys user, at, mode, action:

    python3 scripts/session_report.py events.jsonl
    python3 scripts/session_report.py events.jsonl --gap 600 --json
"""

import argparse
import json
import sys

from taggraph import compute_stats, read_event_log, render_report, sessionize
from taggraph.service import stats_dict


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("log", help="event log file, or - for stdin")
    parser.add_argument(
        "--gap",
        type=float,
        default=1800.0,
        help="inactivity timeout in seconds (default 1800)",
    )
    parser.add_argument(
        "--json", action="store_true", help="emit JSON instead of the text table"
    )
    args = parser.parse_args()

    if args.log == "-":
        lines = sys.stdin
    else:
        lines = open(args.log, "r", encoding="utf-8")
    try:
        events = read_event_log(lines)
    finally:
        if lines is not sys.stdin:
            lines.close()

    stats = compute_stats(sessionize(events, gap=args.gap))
    if args.json:
        print(json.dumps(stats_dict(stats), indent=2))
    else:
        print(render_report(stats), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
