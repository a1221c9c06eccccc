"""HTTP/JSON surface for the companion UI.

Every mutation funnels through one lock and persists the full state before
responding, so a restart never loses acknowledged writes. Domain errors map
to status codes by their stable ``code``; bodies are ``{"error": code,
"detail": ...}``. Credentials are configuration only and never appear in any
response.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone
from typing import Optional

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .activity import compute_snapshot, evaluate_nudge, radar_data
from .config import ServiceConfig
from .errors import (
    NoStoryError,
    StorypathError,
    UnauthorizedError,
    UnknownJobError,
    UnknownPlatformError,
    UnknownTagError,
)
from .export import build_repo_layout, push_repository
from .models import new_id, utc_now
from .persistence import load_store, persist_store
from .providers import OpenAIChatProvider
from .repohost import GitHubClient, LocalDirRepoHost
from .stories import collect_story_input, generate_story
from .store import CurationStore
from .threads import adapt_for_platform

DEFAULT_LEARNER = "default"

STATUS_BY_CODE = {
    "invalid-url": 400,
    "rating-out-of-range": 400,
    "empty-text": 400,
    "offset-on-non-video": 400,
    "empty-name": 400,
    "self-merge": 400,
    "not-a-video": 400,
    "insufficient-resources": 400,
    "no-reflections": 400,
    "empty-input": 400,
    "empty-story": 400,
    "unknown-platform": 400,
    "clock-skew": 400,
    "empty-tag": 400,
    "malformed-layout": 400,
    "invalid-body": 400,
    "unauthorized": 401,
    "unknown-resource": 404,
    "unknown-tag": 404,
    "unknown-story": 404,
    "no-story": 404,
    "unknown-job": 404,
    "provider-failure": 502,
    "remote-failure": 502,
    "corrupt-store": 500,
    "io-failure": 500,
}


class ResourceCreate(BaseModel):
    url: str
    title: str = ""
    kind: str = "web-page"


class RatingSet(BaseModel):
    rating: int


class ReflectionCreate(BaseModel):
    resource_id: str
    text: str
    kind: str = "note"
    video_offset: Optional[int] = Field(default=None, ge=0)


class TagCreate(BaseModel):
    name: str


class AssignCreate(BaseModel):
    resource_id: str


class MergeRequest(BaseModel):
    source_tag_id: str
    target_tag_id: str


class StoryCreate(BaseModel):
    tag_id: str
    min_resources: int = Field(default=1, ge=0)


class NudgeRequest(BaseModel):
    visited_host: str
    now: Optional[datetime] = None
    last_nudge_at: Optional[datetime] = None


def _as_utc(moment: Optional[datetime]) -> Optional[datetime]:
    if moment is None:
        return None
    if moment.tzinfo is None:
        return moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc)


class ServiceState:
    """Shared state behind the routes: stores, provider, remote, jobs."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.lock = threading.Lock()
        self.stores = load_store(config.data_path)
        self.jobs: dict[str, dict] = {}
        if config.provider_credentials:
            self.provider = OpenAIChatProvider(
                api_key=config.provider_credentials,
                model=config.provider_model,
                base_url=config.provider_base_url,
            )
        else:
            self.provider = None
        if config.repo_host_credentials:
            self.repo_client = GitHubClient(
                token=config.repo_host_credentials, api_url=config.repo_host_api_url
            )
        else:
            self.repo_client = LocalDirRepoHost(config.resolved_export_dir())

    def store_for(self, learner_id: str) -> CurationStore:
        store = self.stores.get(learner_id)
        if store is None:
            store = CurationStore()
            self.stores[learner_id] = store
        return store

    def persist(self) -> None:
        persist_store(self.stores, self.config.data_path)


def create_app(config: ServiceConfig) -> FastAPI:
    state = ServiceState(config)
    app = FastAPI(title="storypath", version=__version__)
    app.state.service = state

    def current_learner(authorization: Optional[str] = Header(default=None)) -> str:
        if not config.auth_tokens:
            return DEFAULT_LEARNER
        if authorization is None or not authorization.startswith("Bearer "):
            raise UnauthorizedError("missing bearer token")
        token = authorization[len("Bearer "):].strip()
        learner = config.auth_tokens.get(token)
        if learner is None:
            raise UnauthorizedError("unrecognized token")
        return learner

    @app.exception_handler(StorypathError)
    async def domain_error_handler(request: Request, exc: StorypathError):
        status = STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"error": exc.code, "detail": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "invalid-body", "detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    # -- curation -------------------------------------------------------------

    @app.post("/resources")
    def create_resource(body: ResourceCreate, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            if body.kind not in ("web-page", "video", "other"):
                return JSONResponse(
                    status_code=400,
                    content={"error": "invalid-body", "detail": f"unknown kind {body.kind!r}"},
                )
            resource = store.add_resource(body.url, body.title, body.kind)
            state.persist()
            return resource.to_dict()

    @app.get("/resources")
    def list_resources(learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        return [r.to_dict() for r in store.resources()]

    @app.post("/resources/{resource_id}/rating")
    def set_rating(resource_id: str, body: RatingSet, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            resource = store.rate_resource(resource_id, body.rating)
            state.persist()
            return resource.to_dict()

    @app.post("/reflections")
    def create_reflection(body: ReflectionCreate, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            if body.kind not in ("note", "question", "intention"):
                return JSONResponse(
                    status_code=400,
                    content={"error": "invalid-body", "detail": f"unknown kind {body.kind!r}"},
                )
            reflection = store.add_reflection(
                body.resource_id, body.text, body.kind, body.video_offset
            )
            state.persist()
            return reflection.to_dict()

    @app.get("/reflections")
    def list_reflections(
        resource_id: Optional[str] = Query(default=None),
        learner: str = Depends(current_learner),
    ):
        store = state.store_for(learner)
        if resource_id is not None:
            return [r.to_dict() for r in store.reflections_for_resource(resource_id)]
        ordered = sorted(store.reflections(), key=lambda r: (r.created_at, r.id))
        return [r.to_dict() for r in ordered]

    @app.post("/tags")
    def create_tag(body: TagCreate, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            tag = store.create_tag(body.name)
            state.persist()
            return tag.to_dict()

    @app.get("/tags")
    def list_tags(learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        return [t.to_dict() for t in store.tags()]

    @app.post("/tags/{tag_id}/assign")
    def assign_tag(tag_id: str, body: AssignCreate, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            assignment = store.assign_tag(tag_id, body.resource_id)
            state.persist()
            return assignment.to_dict()

    @app.post("/tags/merge")
    def merge_tags(body: MergeRequest, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            tag = store.merge_tags(body.source_tag_id, body.target_tag_id)
            state.persist()
            return tag.to_dict()

    @app.get("/tags/{tag_id}/resources")
    def tag_resources(tag_id: str, learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        return [r.to_dict() for r in store.resources_by_tag(tag_id)]

    # -- stories ----------------------------------------------------------------

    def _generate(store: CurationStore, tag_id: str, min_resources: int):
        story_input = collect_story_input(store, tag_id, min_resources=min_resources)
        return generate_story(
            store,
            story_input,
            provider=state.provider,
            fallback_enabled=state.config.fallback_enabled,
        )

    @app.post("/stories")
    def create_story(body: StoryCreate, learner: str = Depends(current_learner)):
        if state.config.background_generation:
            with state.lock:
                store = state.store_for(learner)
                # Validate the input now so obvious errors surface synchronously.
                collect_story_input(store, body.tag_id, min_resources=body.min_resources)
            job_id = new_id("job")
            state.jobs[job_id] = {"status": "pending", "story": None, "error": None}

            def run_job():
                try:
                    with state.lock:
                        job_store = state.store_for(learner)
                        story = _generate(job_store, body.tag_id, body.min_resources)
                        state.persist()
                    state.jobs[job_id].update(status="done", story=story.to_dict())
                except StorypathError as exc:
                    state.jobs[job_id].update(status="failed", error=exc.code)

            threading.Thread(target=run_job, daemon=True).start()
            return JSONResponse(status_code=202, content={"job_id": job_id, "status": "pending"})
        with state.lock:
            store = state.store_for(learner)
            story = _generate(store, body.tag_id, body.min_resources)
            state.persist()
            return story.to_dict()

    @app.get("/stories/jobs/{job_id}")
    def story_job(job_id: str, learner: str = Depends(current_learner)):
        job = state.jobs.get(job_id)
        if job is None:
            raise UnknownJobError(f"no such job: {job_id}")
        return {"job_id": job_id, **job}

    @app.get("/stories/latest")
    def latest_story(
        tag_id: Optional[str] = Query(default=None),
        learner: str = Depends(current_learner),
    ):
        store = state.store_for(learner)
        return store.latest_story(tag_id).to_dict()

    @app.post("/stories/{story_id}/adapt")
    def adapt_story(
        story_id: str,
        platform: str = Query(...),
        learner: str = Depends(current_learner),
    ):
        store = state.store_for(learner)
        story = store.get_story(story_id)
        profile = state.config.platform_profiles.get(platform)
        if profile is None:
            raise UnknownPlatformError(f"no such platform profile: {platform}")
        posts = adapt_for_platform(story, profile)
        return {"platform": platform, "posts": [p.to_dict() for p in posts]}

    # -- export -----------------------------------------------------------------

    @app.post("/export/{tag}")
    def export_tag(tag: str, learner: str = Depends(current_learner)):
        with state.lock:
            store = state.store_for(learner)
            try:
                found = store.get_tag(tag)
            except UnknownTagError:
                found = store.find_tag_by_name(tag)
                if found is None:
                    raise
            try:
                story = store.latest_story(found.id)
            except NoStoryError:
                story = None
            layout = build_repo_layout(store, found.id, story)
            receipt = push_repository(layout, state.repo_client)
            return {"receipt": receipt.to_dict(), "files": list(layout.files)}

    # -- activity -----------------------------------------------------------------

    @app.get("/activity/snapshot")
    def activity_snapshot(learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        return compute_snapshot(store.events(), utc_now()).to_dict()

    @app.get("/activity/radar")
    def activity_radar(learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        return [d.to_dict() for d in radar_data(store)]

    @app.post("/nudge/evaluate")
    def nudge_evaluate(body: NudgeRequest, learner: str = Depends(current_learner)):
        store = state.store_for(learner)
        now = _as_utc(body.now) or utc_now()
        snapshot = compute_snapshot(store.events(), now)
        try:
            story = store.latest_story()
        except NoStoryError:
            story = None
        payload = evaluate_nudge(
            visited_host=body.visited_host,
            now=now,
            policy=state.config.nudge_policy,
            snapshot=snapshot,
            last_nudge_at=_as_utc(body.last_nudge_at),
            latest_story=story,
        )
        return {"nudge": payload.to_dict() if payload else None}

    return app
