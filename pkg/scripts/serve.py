#!/usr/bin/env python3
"""Start the bookmark manager HTTP service.

Thin wrapper over ``python3 -m taggraph``; both accept the same flags
(--host, --port, --journal, --snapshot, --session-gap, --depth,
--max-neighbors, --max-nodes, --ui-dir) and TAGGRAPH_* environment
variables.
"""

import sys

from taggraph.service import main

if __name__ == "__main__":
    sys.exit(main())
