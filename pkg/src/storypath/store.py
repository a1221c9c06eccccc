"""The learner's curated corpus: resources, reflections, ratings, tags, stories.

Single-writer component: every mutation is serialized behind one lock, and
mutation timestamps are clamped so they never decrease within one store.
Deletion is not exposed (merging tags is the only way a tag disappears), so
references can never dangle.
"""

from __future__ import annotations

import threading
from datetime import datetime, timedelta
from typing import Callable, Optional
from urllib.parse import urlsplit, urlunsplit

from .activity import CLOCK_SKEW_ALLOWANCE, EVENT_KINDS, ActivityEvent
from .errors import (
    ClockSkewError,
    EmptyNameError,
    EmptyTextError,
    InvalidUrlError,
    NoStoryError,
    NotAVideoError,
    OffsetOnNonVideoError,
    RatingOutOfRangeError,
    SelfMergeError,
    UnknownResourceError,
    UnknownTagError,
)
from .models import (
    REFLECTION_KINDS,
    RESOURCE_KINDS,
    Reflection,
    Resource,
    Story,
    Tag,
    TagAssignment,
    new_id,
    utc_now,
)

RATING_MIN = 1
RATING_MAX = 5


def normalize_url(url: str) -> str:
    """Canonical form used for per-learner URL dedupe.

    Lowercases scheme and host and trims the trailing slash; query (video ids
    live there) and fragment are kept as given.
    """
    try:
        parts = urlsplit(url)
    except ValueError as exc:
        raise InvalidUrlError(f"could not parse URL: {url!r}") from exc
    if not parts.scheme or not parts.netloc:
        raise InvalidUrlError(f"not an absolute URL: {url!r}")
    return urlunsplit(
        (parts.scheme.lower(), parts.netloc.lower(), parts.path.rstrip("/"), parts.query, parts.fragment)
    )


def normalize_tag_name(name: str) -> str:
    """Lowercase, trim, and collapse internal whitespace to single hyphens."""
    return "-".join(name.strip().lower().split())


def anchored_url(resource: Resource, video_offset: int) -> str:
    """Resource URL with a time parameter, e.g. ``...?t=75s``.

    Offset 0 returns the base URL unchanged; the parameter joins with ``&``
    when the URL already carries a query and ``?`` otherwise.
    """
    if resource.kind != "video":
        raise NotAVideoError(f"resource {resource.id} is kind {resource.kind!r}, not video")
    if video_offset < 0:
        raise ValueError("video_offset must be non-negative")
    if video_offset == 0:
        return resource.url
    separator = "&" if urlsplit(resource.url).query else "?"
    return f"{resource.url}{separator}t={video_offset}s"


class CurationStore:
    """In-memory store for one learner, safe to share across request handlers."""

    def __init__(self, clock: Callable[[], datetime] = utc_now):
        self._clock = clock
        self._lock = threading.RLock()
        self._resources: dict[str, Resource] = {}
        self._resource_id_by_url: dict[str, str] = {}
        self._reflections: dict[str, Reflection] = {}
        self._tags: dict[str, Tag] = {}
        self._tag_id_by_name: dict[str, str] = {}
        self._assignments: dict[tuple[str, str], TagAssignment] = {}
        self._stories: dict[str, Story] = {}
        self._events: list[ActivityEvent] = []
        self._last_ts: Optional[datetime] = None

    # -- time ---------------------------------------------------------------

    def now(self) -> datetime:
        """Current store time, clamped so it never runs backwards."""
        with self._lock:
            moment = self._clock()
            if self._last_ts is not None and moment < self._last_ts:
                moment = self._last_ts
            self._last_ts = moment
            return moment

    # -- resources ------------------------------------------------------------

    def add_resource(self, url: str, title: str, kind: str = "web-page") -> Resource:
        """Insert a resource, or return the existing one for the same normalized URL.

        The upsert refreshes the title to the latest value but keeps the
        original id, URL, timestamp, and rating.
        """
        if kind not in RESOURCE_KINDS:
            raise ValueError(f"unknown resource kind: {kind!r}")
        normalized = normalize_url(url)
        with self._lock:
            existing_id = self._resource_id_by_url.get(normalized)
            if existing_id is not None:
                existing = self._resources[existing_id]
                existing.title = title
                return existing
            resource = Resource(id=new_id("res"), url=url, title=title, kind=kind, added_at=self.now())
            self._resources[resource.id] = resource
            self._resource_id_by_url[normalized] = resource.id
            self.record_event("resource_added", at=resource.added_at)
            return resource

    def get_resource(self, resource_id: str) -> Resource:
        resource = self._resources.get(resource_id)
        if resource is None:
            raise UnknownResourceError(f"no such resource: {resource_id}")
        return resource

    def resources(self) -> list[Resource]:
        return list(self._resources.values())

    def rate_resource(self, resource_id: str, rating: int) -> Resource:
        with self._lock:
            resource = self.get_resource(resource_id)
            if not isinstance(rating, int) or isinstance(rating, bool) or not RATING_MIN <= rating <= RATING_MAX:
                raise RatingOutOfRangeError(f"rating must be an integer in [{RATING_MIN}, {RATING_MAX}]")
            resource.rating = rating
            return resource

    # -- reflections ----------------------------------------------------------

    def add_reflection(
        self,
        resource_id: str,
        text: str,
        kind: str = "note",
        video_offset: Optional[int] = None,
    ) -> Reflection:
        if kind not in REFLECTION_KINDS:
            raise ValueError(f"unknown reflection kind: {kind!r}")
        with self._lock:
            resource = self.get_resource(resource_id)
            if not text.strip():
                raise EmptyTextError("reflection text is empty")
            if video_offset is not None:
                if resource.kind != "video":
                    raise OffsetOnNonVideoError(f"resource {resource_id} is not a video")
                if video_offset < 0:
                    raise ValueError("video_offset must be non-negative")
            reflection = Reflection(
                id=new_id("ref"),
                resource_id=resource_id,
                text=text,
                kind=kind,
                created_at=self.now(),
                video_offset=video_offset,
            )
            self._reflections[reflection.id] = reflection
            self.record_event("reflection_added", at=reflection.created_at)
            return reflection

    def reflections(self) -> list[Reflection]:
        return list(self._reflections.values())

    def reflections_for_resource(self, resource_id: str) -> list[Reflection]:
        """Reflections on one resource, ordered by created_at (id breaks ties)."""
        self.get_resource(resource_id)
        found = [r for r in self._reflections.values() if r.resource_id == resource_id]
        return sorted(found, key=lambda r: (r.created_at, r.id))

    # -- tags -----------------------------------------------------------------

    def create_tag(self, name: str) -> Tag:
        normalized = normalize_tag_name(name)
        if not normalized:
            raise EmptyNameError("tag name is empty after normalization")
        with self._lock:
            existing_id = self._tag_id_by_name.get(normalized)
            if existing_id is not None:
                return self._tags[existing_id]
            tag = Tag(id=new_id("tag"), name=normalized, created_at=self.now())
            self._tags[tag.id] = tag
            self._tag_id_by_name[normalized] = tag.id
            self.record_event("tag_created", at=tag.created_at)
            return tag

    def get_tag(self, tag_id: str) -> Tag:
        tag = self._tags.get(tag_id)
        if tag is None:
            raise UnknownTagError(f"no such tag: {tag_id}")
        return tag

    def find_tag_by_name(self, name: str) -> Optional[Tag]:
        tag_id = self._tag_id_by_name.get(normalize_tag_name(name))
        return self._tags.get(tag_id) if tag_id else None

    def tags(self) -> list[Tag]:
        return list(self._tags.values())

    def assign_tag(self, tag_id: str, resource_id: str) -> TagAssignment:
        with self._lock:
            self.get_tag(tag_id)
            self.get_resource(resource_id)
            key = (tag_id, resource_id)
            existing = self._assignments.get(key)
            if existing is not None:
                return existing
            assignment = TagAssignment(tag_id=tag_id, resource_id=resource_id, assigned_at=self.now())
            self._assignments[key] = assignment
            return assignment

    def assignments(self) -> list[TagAssignment]:
        return list(self._assignments.values())

    def merge_tags(self, source_tag_id: str, target_tag_id: str) -> Tag:
        """Fold one learning path into another.

        The target ends up with the set union of both tags' resources, the
        source tag is deleted, and stories linked to the source move to the
        target. Assignment timestamps are preserved from whichever tag held
        them first.
        """
        with self._lock:
            if source_tag_id == target_tag_id:
                raise SelfMergeError("cannot merge a tag into itself")
            source = self.get_tag(source_tag_id)
            target = self.get_tag(target_tag_id)
            moved = [a for a in self._assignments.values() if a.tag_id == source.id]
            for assignment in moved:
                del self._assignments[(source.id, assignment.resource_id)]
                key = (target.id, assignment.resource_id)
                if key not in self._assignments:
                    self._assignments[key] = TagAssignment(
                        tag_id=target.id,
                        resource_id=assignment.resource_id,
                        assigned_at=assignment.assigned_at,
                    )
            for story in self._stories.values():
                if story.tag_id == source.id:
                    story.tag_id = target.id
            del self._tags[source.id]
            del self._tag_id_by_name[source.name]
            return target

    def resources_by_tag(self, tag_id: str) -> list[Resource]:
        """Resources assigned to a tag, ordered by added_at (id breaks ties)."""
        self.get_tag(tag_id)
        found = [
            self._resources[a.resource_id]
            for a in self._assignments.values()
            if a.tag_id == tag_id
        ]
        return sorted(found, key=lambda r: (r.added_at, r.id))

    # -- stories ----------------------------------------------------------------

    def add_story(self, story: Story) -> Story:
        """Commit a generated story; it becomes its tag's latest story."""
        with self._lock:
            self.get_tag(story.tag_id)
            self._stories[story.id] = story
            self.record_event("story_created", at=self.now())
            return story

    def get_story(self, story_id: str) -> Story:
        from .errors import UnknownStoryError

        story = self._stories.get(story_id)
        if story is None:
            raise UnknownStoryError(f"no such story: {story_id}")
        return story

    def stories(self) -> list[Story]:
        return list(self._stories.values())

    def latest_story(self, tag_id: Optional[str] = None) -> Story:
        """The newest story, learner-wide or scoped to one tag."""
        candidates = list(self._stories.values())
        if tag_id is not None:
            self.get_tag(tag_id)
            candidates = [s for s in candidates if s.tag_id == tag_id]
        if not candidates:
            raise NoStoryError("no story in the requested scope")
        return max(candidates, key=lambda s: (s.created_at, s.id))

    # -- activity events ----------------------------------------------------------

    def record_event(self, kind: str, at: Optional[datetime] = None) -> None:
        """Append a learning event; rejects timestamps older than 60 s behind the log."""
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind: {kind!r}")
        with self._lock:
            moment = at if at is not None else self.now()
            if self._events:
                newest = max(e.at for e in self._events)
                if moment < newest - CLOCK_SKEW_ALLOWANCE:
                    raise ClockSkewError(
                        f"event at {moment.isoformat()} is too far behind the log ({newest.isoformat()})"
                    )
            self._events.append(ActivityEvent(kind=kind, at=moment))
            # Keep the store clock at or ahead of the log so internal
            # mutation events can never violate the skew rule themselves.
            if self._last_ts is None or moment > self._last_ts:
                self._last_ts = moment

    def events(self) -> list[ActivityEvent]:
        return list(self._events)

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "resources": [r.to_dict() for r in self._resources.values()],
            "reflections": [r.to_dict() for r in self._reflections.values()],
            "tags": [t.to_dict() for t in self._tags.values()],
            "assignments": [a.to_dict() for a in self._assignments.values()],
            "stories": [s.to_dict() for s in self._stories.values()],
            "events": [e.to_dict() for e in self._events],
        }

    @classmethod
    def from_dict(cls, data: dict, clock: Callable[[], datetime] = utc_now) -> "CurationStore":
        store = cls(clock=clock)
        for record in data["resources"]:
            resource = Resource.from_dict(record)
            store._resources[resource.id] = resource
            store._resource_id_by_url[normalize_url(resource.url)] = resource.id
        for record in data["reflections"]:
            reflection = Reflection.from_dict(record)
            store._reflections[reflection.id] = reflection
        for record in data["tags"]:
            tag = Tag.from_dict(record)
            store._tags[tag.id] = tag
            store._tag_id_by_name[tag.name] = tag.id
        for record in data["assignments"]:
            assignment = TagAssignment.from_dict(record)
            store._assignments[(assignment.tag_id, assignment.resource_id)] = assignment
        for record in data["stories"]:
            story = Story.from_dict(record)
            store._stories[story.id] = story
        for record in data["events"]:
            store._events.append(ActivityEvent.from_dict(record))
        stamps = [e.at for e in store._events]
        stamps.extend(r.added_at for r in store._resources.values())
        stamps.extend(r.created_at for r in store._reflections.values())
        stamps.extend(t.created_at for t in store._tags.values())
        stamps.extend(a.assigned_at for a in store._assignments.values())
        stamps.extend(s.created_at for s in store._stories.values())
        if stamps:
            store._last_ts = max(stamps)
        return store
