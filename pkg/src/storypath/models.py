"""Domain records: resources, reflections, tags, assignments, and stories.

All timestamps are timezone-aware UTC datetimes. Identifiers are opaque
strings that stay safe inside URLs and filenames.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

RESOURCE_KINDS = ("web-page", "video", "other")
REFLECTION_KINDS = ("note", "question", "intention")


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


def new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


def iso_seconds(moment: datetime) -> str:
    """Render a UTC timestamp at second precision, e.g. 2025-01-02T03:04:05Z."""
    return moment.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _dump_ts(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).isoformat()


def _load_ts(raw: str) -> datetime:
    parsed = datetime.fromisoformat(raw)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


@dataclass
class Resource:
    """A curated web or video item."""

    id: str
    url: str
    title: str
    kind: str
    added_at: datetime
    rating: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "url": self.url,
            "title": self.title,
            "kind": self.kind,
            "added_at": _dump_ts(self.added_at),
            "rating": self.rating,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Resource":
        return cls(
            id=data["id"],
            url=data["url"],
            title=data["title"],
            kind=data["kind"],
            added_at=_load_ts(data["added_at"]),
            rating=data.get("rating"),
        )


@dataclass
class Reflection:
    """Learner text attached to a resource, optionally anchored to a video offset."""

    id: str
    resource_id: str
    text: str
    kind: str
    created_at: datetime
    video_offset: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "resource_id": self.resource_id,
            "text": self.text,
            "kind": self.kind,
            "created_at": _dump_ts(self.created_at),
            "video_offset": self.video_offset,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Reflection":
        return cls(
            id=data["id"],
            resource_id=data["resource_id"],
            text=data["text"],
            kind=data["kind"],
            created_at=_load_ts(data["created_at"]),
            video_offset=data.get("video_offset"),
        )


@dataclass
class Tag:
    """A named learning path grouping resources."""

    id: str
    name: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "created_at": _dump_ts(self.created_at)}

    @classmethod
    def from_dict(cls, data: dict) -> "Tag":
        return cls(id=data["id"], name=data["name"], created_at=_load_ts(data["created_at"]))


@dataclass
class TagAssignment:
    tag_id: str
    resource_id: str
    assigned_at: datetime

    def to_dict(self) -> dict:
        return {
            "tag_id": self.tag_id,
            "resource_id": self.resource_id,
            "assigned_at": _dump_ts(self.assigned_at),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TagAssignment":
        return cls(
            tag_id=data["tag_id"],
            resource_id=data["resource_id"],
            assigned_at=_load_ts(data["assigned_at"]),
        )


@dataclass(frozen=True)
class StoryEntry:
    """One reflection inside a story listing, with its source links."""

    text: str
    resource_url: str
    anchored_url: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "resource_url": self.resource_url,
            "anchored_url": self.anchored_url,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StoryEntry":
        return cls(
            text=data["text"],
            resource_url=data["resource_url"],
            anchored_url=data.get("anchored_url"),
        )


@dataclass
class Story:
    """A generated learning story for one tag."""

    id: str
    tag_id: str
    title: str
    listing: list[StoryEntry]
    keywords: list[str]
    ai_feedback: str
    created_at: datetime
    provider_id: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "tag_id": self.tag_id,
            "title": self.title,
            "listing": [entry.to_dict() for entry in self.listing],
            "keywords": list(self.keywords),
            "ai_feedback": self.ai_feedback,
            "created_at": _dump_ts(self.created_at),
            "provider_id": self.provider_id,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Story":
        return cls(
            id=data["id"],
            tag_id=data["tag_id"],
            title=data["title"],
            listing=[StoryEntry.from_dict(e) for e in data["listing"]],
            keywords=list(data["keywords"]),
            ai_feedback=data["ai_feedback"],
            created_at=_load_ts(data["created_at"]),
            provider_id=data["provider_id"],
        )
