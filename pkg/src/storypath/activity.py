"""Activity recency: event log snapshots, per-tag radar data, optional nudges.

Nudging is opt-in (disabled by default) and rate-limited; the evaluation is
stateless on the service side, with ``last_nudge_at`` supplied by the client.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import TYPE_CHECKING, Optional

from .models import _dump_ts, _load_ts

if TYPE_CHECKING:
    from .models import Story
    from .store import CurationStore

EVENT_KINDS = ("resource_added", "reflection_added", "tag_created", "story_created")

CLOCK_SKEW_ALLOWANCE = timedelta(seconds=60)


@dataclass(frozen=True)
class ActivityEvent:
    kind: str
    at: datetime

    def to_dict(self) -> dict:
        return {"kind": self.kind, "at": _dump_ts(self.at)}

    @classmethod
    def from_dict(cls, data: dict) -> "ActivityEvent":
        return cls(kind=data["kind"], at=_load_ts(data["at"]))


@dataclass(frozen=True)
class KindRecency:
    last_at: datetime
    elapsed: timedelta


@dataclass(frozen=True)
class ActivitySnapshot:
    """Per-kind "time since last event"; kinds with no events are absent."""

    computed_at: datetime
    kinds: dict[str, KindRecency]

    def to_dict(self) -> dict:
        payload = {}
        for kind in EVENT_KINDS:
            recency = self.kinds.get(kind)
            if recency is None:
                payload[kind] = None
            else:
                payload[kind] = {
                    "last_at": _dump_ts(recency.last_at),
                    "elapsed_seconds": recency.elapsed.total_seconds(),
                }
        return {"computed_at": _dump_ts(self.computed_at), "kinds": payload}


def compute_snapshot(events: list[ActivityEvent], now: datetime) -> ActivitySnapshot:
    """Latest event and elapsed duration per kind, as of ``now``."""
    latest: dict[str, datetime] = {}
    for event in events:
        known = latest.get(event.kind)
        if known is None or event.at > known:
            latest[event.kind] = event.at
    kinds = {kind: KindRecency(last_at=at, elapsed=now - at) for kind, at in latest.items()}
    return ActivitySnapshot(computed_at=now, kinds=kinds)


@dataclass(frozen=True)
class NudgePolicy:
    enabled: bool = False
    watched_domains: tuple[str, ...] = ()
    staleness_threshold: timedelta = timedelta(days=3)
    min_interval_between_nudges: timedelta = timedelta(hours=6)

    def __post_init__(self):
        if self.staleness_threshold <= timedelta(0):
            raise ValueError("staleness_threshold must be positive")
        if self.min_interval_between_nudges <= timedelta(0):
            raise ValueError("min_interval_between_nudges must be positive")


@dataclass(frozen=True)
class RadarDatum:
    tag_name: str
    resource_count: int

    def to_dict(self) -> dict:
        return {"tag_name": self.tag_name, "resource_count": self.resource_count}


@dataclass(frozen=True)
class NudgePayload:
    """What a client shows in a nudge pop-up: recency summary plus the latest story."""

    snapshot: ActivitySnapshot
    story_id: Optional[str] = None
    story_title: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "snapshot": self.snapshot.to_dict(),
            "story_id": self.story_id,
            "story_title": self.story_title,
        }


def radar_data(store: "CurationStore") -> list[RadarDatum]:
    """One datum per tag with its assignment count, sorted by tag name."""
    counts = {tag.id: 0 for tag in store.tags()}
    for assignment in store.assignments():
        counts[assignment.tag_id] += 1
    data = [RadarDatum(tag_name=tag.name, resource_count=counts[tag.id]) for tag in store.tags()]
    return sorted(data, key=lambda datum: datum.tag_name)


def _host_watched(host: str, domains: tuple[str, ...]) -> bool:
    host = host.lower().strip()
    for domain in domains:
        domain = domain.lower().strip()
        if host == domain or host.endswith("." + domain):
            return True
    return False


def evaluate_nudge(
    visited_host: str,
    now: datetime,
    policy: NudgePolicy,
    snapshot: ActivitySnapshot,
    last_nudge_at: Optional[datetime] = None,
    latest_story: "Optional[Story]" = None,
) -> Optional[NudgePayload]:
    """Return a nudge payload, or None when any gate blocks it.

    Gates, in order: policy enabled, visited host watched, learning stale
    (some kind idle past the threshold, or no activity at all), and the
    per-client rate limit against ``last_nudge_at``.
    """
    if not policy.enabled:
        return None
    if not _host_watched(visited_host, policy.watched_domains):
        return None
    stale = not snapshot.kinds or any(
        recency.elapsed >= policy.staleness_threshold for recency in snapshot.kinds.values()
    )
    if not stale:
        return None
    if last_nudge_at is not None and now - last_nudge_at < policy.min_interval_between_nudges:
        return None
    return NudgePayload(
        snapshot=snapshot,
        story_id=latest_story.id if latest_story else None,
        story_title=latest_story.title if latest_story else None,
    )
