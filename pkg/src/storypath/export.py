"""Repository export: a tag's history as README plus per-resource markdown.

The layout round-trips: ``parse_repo_layout`` recovers titles, URLs, ratings,
reflection texts, and second-precision timestamps exactly as exported.
Newlines and backslashes inside titles and reflection texts are
backslash-escaped so the line-oriented format stays reversible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Protocol

from .errors import EmptyTagError, MalformedLayoutError, RemoteFailureError
from .models import Reflection, Resource, Story, iso_seconds, utc_now
from .stories import serialize_story
from .store import CurationStore, anchored_url

_SLUG_RE = re.compile(r"[^a-z0-9]+")
_LINK_LINE_RE = re.compile(r"^<(?P<url>.*)>(?: — rating: (?P<rating>[1-5])/5)?$")
_REFLECTION_LINE_RE = re.compile(
    r"^- (?P<ts>\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)"
    r"(?: \[t=(?P<offset>\d+)s\]\((?P<anchor>\S+)\))?"
    r" — (?P<text>.*)$"
)


def slugify(text: str) -> str:
    slug = _SLUG_RE.sub("-", text.lower()).strip("-")
    return slug or "untitled"


def escape_line(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\r", "\\r").replace("\n", "\\n")


def unescape_line(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
            if nxt == "r":
                out.append("\r")
                i += 2
                continue
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


@dataclass
class RepoLayout:
    """Repository name plus an ordered mapping of relative paths to file text."""

    repo_name: str
    files: dict[str, str]


@dataclass(frozen=True)
class RemotePushReceipt:
    remote_url: str
    files_written: int
    pushed_at: datetime

    def to_dict(self) -> dict:
        return {
            "remote_url": self.remote_url,
            "files_written": self.files_written,
            "pushed_at": self.pushed_at.astimezone(timezone.utc).isoformat(),
        }


@dataclass(frozen=True)
class ExportedReflection:
    created_at: str
    text: str


@dataclass(frozen=True)
class ExportedResource:
    title: str
    url: str
    rating: Optional[int]
    reflections: tuple[ExportedReflection, ...]


@dataclass(frozen=True)
class ExportSnapshot:
    resources: tuple[ExportedResource, ...]


def render_resource_file(resource: Resource, reflections: list[Reflection]) -> str:
    """Markdown for one resource: heading, link line, timestamped reflections."""
    for reflection in reflections:
        if reflection.resource_id != resource.id:
            raise ValueError(f"reflection {reflection.id} does not reference resource {resource.id}")
    lines = [f"# {escape_line(resource.title)}", ""]
    link = f"<{resource.url}>"
    if resource.rating is not None:
        link += f" — rating: {resource.rating}/5"
    lines.append(link)
    if reflections:
        lines.append("")
        for reflection in reflections:
            anchor = ""
            if reflection.video_offset is not None:
                anchor = f" [t={reflection.video_offset}s]({anchored_url(resource, reflection.video_offset)})"
            lines.append(
                f"- {iso_seconds(reflection.created_at)}{anchor} — {escape_line(reflection.text)}"
            )
    return "\n".join(lines) + "\n"


def _in_progress_readme(tag_name: str, resources: list[Resource]) -> str:
    lines = [
        f"# {tag_name}",
        "",
        f"Learning in progress: {len(resources)} resources curated so far.",
        "",
    ]
    lines.extend(f"- {iso_seconds(resource.added_at)}" for resource in resources)
    return "\n".join(lines) + "\n"


def build_repo_layout(store: CurationStore, tag_id: str, story: Optional[Story] = None) -> RepoLayout:
    """Lay out a tag as a repository: README story (or in-progress note) plus
    one markdown file per resource, slug-named with -2/-3 collision suffixes."""
    tag = store.get_tag(tag_id)
    resources = store.resources_by_tag(tag_id)
    if not resources:
        raise EmptyTagError(f"tag {tag.name!r} has no resources to export")
    if story is not None and story.tag_id != tag.id:
        raise ValueError(f"story {story.id} belongs to a different tag")
    readme = serialize_story(story) + "\n" if story is not None else _in_progress_readme(tag.name, resources)
    files = {"README.md": readme}
    used: dict[str, int] = {}
    for resource in resources:
        slug = slugify(resource.title)
        seen = used.get(slug, 0) + 1
        used[slug] = seen
        path = f"{slug}.md" if seen == 1 else f"{slug}-{seen}.md"
        files[path] = render_resource_file(resource, store.reflections_for_resource(resource.id))
    return RepoLayout(repo_name=tag.name, files=files)


def parse_repo_layout(layout: RepoLayout) -> ExportSnapshot:
    """Reconstruct export-relevant content from a layout built by build_repo_layout."""
    if "README.md" not in layout.files:
        raise MalformedLayoutError("layout has no README.md")
    resources = []
    for path, content in layout.files.items():
        if path == "README.md":
            continue
        resources.append(_parse_resource_file(path, content))
    return ExportSnapshot(resources=tuple(resources))


def _parse_resource_file(path: str, content: str) -> ExportedResource:
    lines = [line for line in content.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("# "):
        raise MalformedLayoutError(f"{path}: missing title heading")
    title = unescape_line(lines[0][2:])
    if len(lines) < 2:
        raise MalformedLayoutError(f"{path}: missing link line")
    link_match = _LINK_LINE_RE.match(lines[1])
    if link_match is None:
        raise MalformedLayoutError(f"{path}: malformed link line")
    rating = int(link_match.group("rating")) if link_match.group("rating") else None
    reflections = []
    for line in lines[2:]:
        match = _REFLECTION_LINE_RE.match(line)
        if match is None:
            raise MalformedLayoutError(f"{path}: malformed reflection line: {line!r}")
        reflections.append(
            ExportedReflection(created_at=match.group("ts"), text=unescape_line(match.group("text")))
        )
    return ExportedResource(
        title=title,
        url=link_match.group("url"),
        rating=rating,
        reflections=tuple(reflections),
    )


class RepoHostClient(Protocol):
    """Contract for repository hosts: ensure a repo exists, then write files."""

    def ensure_repository(self, name: str) -> str: ...

    def write_file(self, repo_name: str, path: str, content: str) -> None: ...


def push_repository(
    layout: RepoLayout,
    remote: RepoHostClient,
    now: Optional[datetime] = None,
) -> RemotePushReceipt:
    """Write every layout file to the remote; a receipt means full success.

    Any client error surfaces as remote-failure without a receipt, so callers
    never see partial-success ambiguity. Re-pushing the same layout overwrites
    file by file, making the operation idempotent per (layout, repo).
    """
    try:
        remote_url = remote.ensure_repository(layout.repo_name)
        for path, content in layout.files.items():
            remote.write_file(layout.repo_name, path, content)
    except Exception as exc:
        raise RemoteFailureError(f"push to {layout.repo_name!r} failed: {exc}") from exc
    return RemotePushReceipt(
        remote_url=remote_url,
        files_written=len(layout.files),
        pushed_at=now if now is not None else utc_now(),
    )
