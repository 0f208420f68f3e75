"""HTTP facade over the bookmark manager.

Personal endpoints identify the caller by a bearer ``X-User`` header (real
authentication is out of scope; the header is what makes the personal vs
social distinction enforceable). All errors come back as a JSON body
``{"code": ..., "message": ...}`` with a 4xx/5xx status.

Endpoint shapes are documented in the repo README.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel

from . import analytics, cloud, context, similarity
from .analytics import DEFAULT_GAP_SECONDS, ClickEvent, Mode, Action
from .context import ContextGraph, FilterParams, NodeKind, NodeRef, ViewMode
from .core import GLOBAL, PopularityScope, Triple, canonicalize_url, normalize_tag, validate_user
from .errors import (
    EmptyTag,
    EmptyTagSet,
    FilterTooTight,
    InvalidUrl,
    InvalidUser,
    NotInCollection,
    TagGraphError,
    UnknownCenter,
    UnknownTag,
)
from .journal import PersistentStore


class MissingUser(TagGraphError):
    code = "missing_user"


class BadRequest(TagGraphError):
    code = "invalid_request"


_STATUS_BY_ERROR = {
    EmptyTag: 400,
    EmptyTagSet: 400,
    InvalidUrl: 400,
    InvalidUser: 400,
    FilterTooTight: 400,
    BadRequest: 400,
    MissingUser: 401,
    UnknownTag: 404,
    UnknownCenter: 404,
    NotInCollection: 409,
}


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8040
    journal_path: Path = Path("data/journal.jsonl")
    snapshot_path: Path | None = None
    session_gap: float = DEFAULT_GAP_SECONDS
    filters: FilterParams = field(default_factory=FilterParams)
    cloud_min_size: float = 12.0
    cloud_max_size: float = 30.0
    cloud_max_tags: int = 50
    ui_dir: Path | None = None


# ---------------------------------------------------------------------------
# JSON shapes
# ---------------------------------------------------------------------------

def triple_dict(t: Triple) -> dict:
    return {"user": t.user, "tag": t.tag, "resource": t.resource, "created_at": t.created_at}


def graph_dict(g: ContextGraph) -> dict:
    return {
        "centers": [{"kind": ref.kind.value, "id": ref.id} for ref in g.centers],
        "nodes": [
            {
                "kind": n.ref.kind.value,
                "id": n.ref.id,
                "locality": n.locality.value,
                "weight": n.weight,
                "title": n.title,
                "is_center": n.is_center,
            }
            for n in g.nodes
        ],
        "edges": [list(edge) for edge in g.edges],
    }


def stats_dict(stats: analytics.SessionStats) -> dict:
    def mode_dict(m: analytics.ModeStats) -> dict:
        return {
            "n_sessions": m.n_sessions,
            "mean_duration_sec": m.mean_duration_sec,
            "mean_clicks": m.mean_clicks,
            "content_fraction": m.content_fraction,
            "switch_fraction": m.switch_fraction,
        }

    return {"list": mode_dict(stats.list_mode), "viz": mode_dict(stats.viz_mode)}


class AnnotationIn(BaseModel):
    url: str
    tags: list[str]
    title: Optional[str] = None


class TagsIn(BaseModel):
    url: str
    tags: list[str]


class TitleIn(BaseModel):
    url: str
    title: str


class RenameIn(BaseModel):
    old: str
    new: str


class EventIn(BaseModel):
    at: float
    mode: str
    action: str
    user: Optional[str] = None


BOOKMARKLET_TEMPLATE = """\
(function () {{
  var target = "{base}app/context?url=" + encodeURIComponent(location.href);
  window.open(target, "_blank");
}})();
"""


def parse_center(raw: str) -> NodeRef:
    """Query form of a center: "tag:<label>", "url:<url>", or a bare tag."""
    if raw.startswith("tag:"):
        return NodeRef(NodeKind.TAG, normalize_tag(raw[4:]))
    if raw.startswith("url:"):
        return NodeRef(NodeKind.RESOURCE, canonicalize_url(raw[4:]))
    return NodeRef(NodeKind.TAG, normalize_tag(raw))


def create_app(pstore: PersistentStore, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="taggraph", docs_url=None, redoc_url=None)

    @app.exception_handler(TagGraphError)
    async def domain_error(_request: Request, exc: TagGraphError):
        status = _STATUS_BY_ERROR.get(type(exc), 500)
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": str(exc)}
        )

    @app.exception_handler(RequestValidationError)
    async def bad_request(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "invalid_request", "message": str(exc)}
        )

    def require_user(x_user: Optional[str] = Header(default=None)) -> str:
        if not x_user:
            raise MissingUser("X-User header required")
        return validate_user(x_user)

    def optional_user(x_user: Optional[str] = Header(default=None)) -> Optional[str]:
        return validate_user(x_user) if x_user else None

    def scope_of(scope: str, user: Optional[str]) -> PopularityScope:
        if scope == "global":
            return GLOBAL
        if scope == "personal":
            if user is None:
                raise MissingUser("personal scope requires the X-User header")
            return PopularityScope.personal(user)
        raise BadRequest(f"scope must be personal or global, not {scope!r}")

    # -- annotation management ------------------------------------------------

    @app.post("/api/annotations")
    def post_annotation(body: AnnotationIn, user: str = Depends(require_user)):
        created = pstore.add_annotation(user, body.url, body.title, body.tags)
        return {"created": [triple_dict(t) for t in created]}

    @app.delete("/api/resources")
    def delete_resource(url: str, user: str = Depends(require_user)):
        return {"removed": pstore.remove_resource(user, url)}

    @app.put("/api/resources/tags")
    def put_tags(body: TagsIn, user: str = Depends(require_user)):
        added, removed = pstore.set_tags(user, body.url, body.tags)
        return {"added": added, "removed": removed}

    @app.put("/api/resources/title")
    def put_title(body: TitleIn, user: str = Depends(require_user)):
        pstore.set_title(user, body.url, body.title)
        return {"ok": True}

    @app.post("/api/tags/rename")
    def rename_tag(body: RenameIn, user: str = Depends(require_user)):
        return {"renamed": pstore.rename_tag(user, body.old, body.new)}

    # -- browsing --------------------------------------------------------------

    @app.get("/api/cloud")
    def get_cloud(
        scope: str = "global",
        max_tags: Optional[int] = Query(default=None, alias="max"),
        user: Optional[str] = Depends(optional_user),
    ):
        counts = pstore.state.tag_counts(scope_of(scope, user))
        cfg = cloud.CloudConfig(
            config.cloud_min_size,
            config.cloud_max_size,
            max_tags if max_tags is not None else config.cloud_max_tags,
        )
        return {
            "tags": [
                {"label": st.label, "count": st.count, "size": st.size}
                for st in cloud.build_cloud(counts, cfg)
            ]
        }

    @app.get("/api/context")
    def get_context(
        centers: list[str] = Query(default=[]),
        view: str = "personal",
        depth: Optional[int] = None,
        max_neighbors: Optional[int] = None,
        max_nodes: Optional[int] = None,
        extra_tags: list[str] = Query(default=[]),
        user: str = Depends(require_user),
    ):
        try:
            filt = FilterParams(
                depth=depth if depth is not None else config.filters.depth,
                max_neighbors=max_neighbors
                if max_neighbors is not None
                else config.filters.max_neighbors,
                max_nodes=max_nodes if max_nodes is not None else config.filters.max_nodes,
                extra_tags=frozenset(normalize_tag(t) for t in extra_tags),
            )
        except ValueError as exc:
            raise BadRequest(str(exc))
        try:
            mode = ViewMode(view)
        except ValueError:
            raise BadRequest(f"view must be personal or social, not {view!r}")
        if not centers:
            raise BadRequest("at least one center is required")
        graph = context.build_context(
            pstore.state, user, [parse_center(c) for c in centers], mode, filt
        )
        return graph_dict(graph)

    @app.get("/api/resources")
    def get_resources(
        tags: list[str] = Query(default=[]),
        scope: str = "global",
        conjunctive: bool = False,
        user: Optional[str] = Depends(optional_user),
    ):
        snap = pstore.state
        rows = snap.resources_for_tags(
            scope_of(scope, user), [normalize_tag(t) for t in tags], conjunctive
        )
        return {
            "resources": [
                {"url": url, "weight": weight, "title": snap.title_for(url, viewer=user)}
                for url, weight in rows
            ]
        }

    # -- similarity and recommendation ------------------------------------------

    @app.get("/api/recommend")
    def get_recommend(url: str, k: int = 10, user: str = Depends(require_user)):
        scored = similarity.recommend_tags(pstore.state, user, url, k)
        return {"tags": [{"label": st.label, "score": st.score} for st in scored]}

    @app.get("/api/related_tags")
    def get_related_tags(tag: str, k: int = 10):
        scored = similarity.related_tags(pstore.state, tag, k)
        return {"tags": [{"label": st.label, "score": st.score} for st in scored]}

    @app.get("/api/similar")
    def get_similar(url: str, k: int = 10):
        scored = similarity.similar_resources(pstore.state, url, k)
        return {
            "resources": [
                {"url": sr.resource, "score": sr.score} for sr in scored
            ]
        }

    # -- interaction log ---------------------------------------------------------

    @app.post("/api/events")
    def post_events(
        body: list[EventIn], user: Optional[str] = Depends(optional_user)
    ):
        events = []
        for row in body:
            owner = row.user or user
            if owner is None:
                raise MissingUser("event without user and no X-User header")
            try:
                mode, action = Mode(row.mode), Action(row.action)
            except ValueError as exc:
                raise BadRequest(str(exc))
            events.append(
                ClickEvent(user=validate_user(owner), at=row.at, mode=mode, action=action)
            )
        return {"recorded": pstore.record_events(events)}

    @app.get("/api/stats")
    def get_stats(gap: Optional[float] = None, format: str = "json"):
        try:
            sessions = analytics.sessionize(
                pstore.events, gap if gap is not None else config.session_gap
            )
        except ValueError as exc:
            raise BadRequest(str(exc))
        stats = analytics.compute_stats(sessions)
        if format == "text":
            return PlainTextResponse(analytics.render_report(stats))
        return stats_dict(stats)

    # -- bookmarklet and UI -------------------------------------------------------

    @app.get("/bookmarklet.js")
    def bookmarklet(request: Request):
        script = BOOKMARKLET_TEMPLATE.format(base=str(request.base_url))
        return Response(content=script, media_type="application/javascript")

    @app.get("/app/{rest:path}")
    def app_assets(rest: str):
        ui_dir = config.ui_dir
        if ui_dir is None or not Path(ui_dir).is_dir():
            return JSONResponse(
                status_code=404,
                content={
                    "code": "ui_not_built",
                    "message": "no UI assets; build the frontend and pass --ui-dir",
                },
            )
        root = Path(ui_dir).resolve()
        candidate = (root / rest).resolve() if rest else root / "index.html"
        if not str(candidate).startswith(str(root)):
            return JSONResponse(
                status_code=404, content={"code": "not_found", "message": rest}
            )
        if not candidate.is_file():
            candidate = root / "index.html"  # SPA routes fall back to the shell
        if not candidate.is_file():
            return JSONResponse(
                status_code=404, content={"code": "not_found", "message": rest}
            )
        return FileResponse(candidate)

    @app.get("/")
    def root_redirect():
        return {
            "service": "taggraph",
            "triples": len(pstore.state.entries),
            "app": "/app/",
            "bookmarklet": "/bookmarklet.js",
        }

    return app


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def _default_ui_dir() -> Path | None:
    here = Path(__file__).resolve()
    for base in [Path.cwd(), *here.parents]:
        candidate = base / "frontend" / "dist"
        if candidate.is_dir():
            return candidate
    return None


def build_config(argv: list[str] | None = None) -> ServiceConfig:
    env = os.environ
    parser = argparse.ArgumentParser(
        prog="taggraph", description="Run the bookmark manager HTTP service"
    )
    parser.add_argument("--host", default=env.get("TAGGRAPH_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(env.get("TAGGRAPH_PORT", "8040")))
    parser.add_argument(
        "--journal", default=env.get("TAGGRAPH_JOURNAL", "data/journal.jsonl")
    )
    parser.add_argument("--snapshot", default=env.get("TAGGRAPH_SNAPSHOT"))
    parser.add_argument(
        "--session-gap",
        type=float,
        default=float(env.get("TAGGRAPH_SESSION_GAP", str(DEFAULT_GAP_SECONDS))),
    )
    parser.add_argument("--depth", type=int, default=int(env.get("TAGGRAPH_DEPTH", "2")))
    parser.add_argument(
        "--max-neighbors", type=int, default=int(env.get("TAGGRAPH_MAX_NEIGHBORS", "10"))
    )
    parser.add_argument(
        "--max-nodes", type=int, default=int(env.get("TAGGRAPH_MAX_NODES", "60"))
    )
    parser.add_argument("--ui-dir", default=env.get("TAGGRAPH_UI_DIR"))
    args = parser.parse_args(argv)
    return ServiceConfig(
        host=args.host,
        port=args.port,
        journal_path=Path(args.journal),
        snapshot_path=Path(args.snapshot) if args.snapshot else None,
        session_gap=args.session_gap,
        filters=FilterParams(
            depth=args.depth, max_neighbors=args.max_neighbors, max_nodes=args.max_nodes
        ),
        ui_dir=Path(args.ui_dir) if args.ui_dir else _default_ui_dir(),
    )


def main(argv: list[str] | None = None) -> int:
    import uvicorn

    config = build_config(argv)
    try:
        pstore = PersistentStore.open(config.journal_path, config.snapshot_path)
    except TagGraphError as exc:
        print(f"refusing to start: {exc}", file=sys.stderr)
        return 2
    app = create_app(pstore, config)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    except OSError as exc:  # bind failure, e.g. occupied port
        print(f"refusing to start: {exc}", file=sys.stderr)
        return 2
    return 0
