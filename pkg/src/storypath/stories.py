"""Story assembly: collecting curation history, prompting, generation, fallback.

Serialized stories always carry four sections in a fixed order: a ``# `` title
line, then ``## Reflections``, ``## Keywords``, and ``## Feedback``. The same
markers drive both provider-output parsing and the repository export README.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from typing import Optional

from .errors import (
    EmptyInputError,
    InsufficientResourcesError,
    NoReflectionsError,
    ProviderFailureError,
)
from .models import Reflection, Resource, Story, StoryEntry, Tag, iso_seconds
from .store import CurationStore, anchored_url

TITLE_MARKER = "# "
REFLECTIONS_MARKER = "## Reflections"
KEYWORDS_MARKER = "## Keywords"
FEEDBACK_MARKER = "## Feedback"

SYSTEM_TEXT = (
    "You help an informal programming learner turn curated resources and "
    "in-the-moment reflections into a learning story.\n"
    "Write the story in the first person, as the learner telling their own story.\n"
    "Never give superficial or generic advice; stay specific to the reflections below.\n"
    "Answer with exactly four sections, in this order:\n"
    f'1. a title line starting with "{TITLE_MARKER}"\n'
    f'2. a "{REFLECTIONS_MARKER}" section retelling the reflections in order\n'
    f'3. a "{KEYWORDS_MARKER}" section with a comma-separated keyword list\n'
    f'4. a "{FEEDBACK_MARKER}" section with feedback on the learning path\n'
)

# Fixed stop-word list so keyword extraction is identical across environments.
STOP_WORDS = frozenset(
    """
    a about above after again against all also am an and any are aren't as at be
    because been before being below between both but by can cannot could couldn't
    did didn't do does doesn't doing don't down during each few for from further
    had hadn't has hasn't have haven't having he her here hers herself him himself
    his how i if in into is isn't it its itself just let me more most mustn't my
    myself no nor not now of off on once only or other ought our ours ourselves
    out over own same shan't she should shouldn't so some such than that the their
    theirs them themselves then there these they this those through to too under
    until up very was wasn't we were weren't what when where which while who whom
    why will with won't would wouldn't you your yours yourself yourselves
    """.split()
)

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")
_MIN_TOKEN_LENGTH = 3


@dataclass(frozen=True)
class PromptSpec:
    system_text: str
    user_text: str


@dataclass(frozen=True)
class StoryInput:
    """A tag's curation history, fully ordered, ready for prompting."""

    tag: Tag
    entries: tuple[tuple[Resource, tuple[Reflection, ...]], ...]
    collected_at: datetime

    def reflection_count(self) -> int:
        return sum(len(reflections) for _, reflections in self.entries)


class StoryParseError(Exception):
    """Provider output did not contain the expected section markers."""


def collect_story_input(store: CurationStore, tag_id: str, min_resources: int = 1) -> StoryInput:
    """Gather a tag's resources and reflections in curation order."""
    tag = store.get_tag(tag_id)
    resources = store.resources_by_tag(tag_id)
    if len(resources) < min_resources:
        raise InsufficientResourcesError(
            f"tag {tag.name!r} has {len(resources)} resources, needs {min_resources}"
        )
    entries = tuple(
        (resource, tuple(store.reflections_for_resource(resource.id))) for resource in resources
    )
    if sum(len(reflections) for _, reflections in entries) == 0:
        raise NoReflectionsError(f"tag {tag.name!r} has no reflections")
    return StoryInput(tag=tag, entries=entries, collected_at=store.now())


def build_prompt(story_input: StoryInput) -> PromptSpec:
    """Deterministic prompt carrying every reflection verbatim."""
    _require_nonempty(story_input)
    lines = [f"Learning path: {story_input.tag.name}", ""]
    for resource, reflections in story_input.entries:
        lines.append(f"Resource: {resource.title}")
        lines.append(f"URL: {resource.url}")
        if resource.rating is not None:
            lines.append(f"Rating: {resource.rating}/5")
        if reflections:
            lines.append("Reflections:")
            for reflection in reflections:
                offset = (
                    f", at {reflection.video_offset}s" if reflection.video_offset is not None else ""
                )
                lines.append(f"- [{iso_seconds(reflection.created_at)}] ({reflection.kind}{offset}) {reflection.text}")
        lines.append("")
    return PromptSpec(system_text=SYSTEM_TEXT, user_text="\n".join(lines).rstrip("\n"))


def extract_keywords(texts: list[str], k: int) -> list[str]:
    """Top-k tokens by frequency, ties broken lexicographically.

    Tokens are case-folded, keep internal hyphens, and are dropped when they
    are stop words or shorter than three characters.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    counts: Counter[str] = Counter()
    for text in texts:
        for token in _TOKEN_RE.findall(text.casefold()):
            if len(token) >= _MIN_TOKEN_LENGTH and token not in STOP_WORDS:
                counts[token] += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [token for token, _ in ranked[:k]]


def _require_nonempty(story_input: StoryInput) -> None:
    if not story_input.entries or story_input.reflection_count() == 0:
        raise EmptyInputError("story input has no reflections")


def _listing_from_input(story_input: StoryInput) -> list[StoryEntry]:
    listing = []
    for resource, reflections in story_input.entries:
        for reflection in reflections:
            anchored = (
                anchored_url(resource, reflection.video_offset)
                if reflection.video_offset is not None
                else None
            )
            listing.append(
                StoryEntry(text=reflection.text, resource_url=resource.url, anchored_url=anchored)
            )
    return listing


def _story_id(*parts: str) -> str:
    digest = hashlib.sha256("\x1f".join(parts).encode("utf-8")).hexdigest()
    return f"story-{digest[:12]}"


def fallback_generate(story_input: StoryInput) -> Story:
    """Deterministic offline story used when no provider is available."""
    _require_nonempty(story_input)
    tag = story_input.tag
    listing = _listing_from_input(story_input)
    all_reflections = [r for _, reflections in story_input.entries for r in reflections]
    keywords = extract_keywords([r.text for r in all_reflections], k=5)
    question_count = sum(1 for r in all_reflections if r.kind == "question")
    stamps = sorted(r.created_at for r in all_reflections)
    feedback = (
        f"On {tag.name} you curated {len(story_input.entries)} resources and wrote "
        f"{len(all_reflections)} reflections ({question_count} questions), "
        f"between {iso_seconds(stamps[0])} and {iso_seconds(stamps[-1])}."
    )
    story = Story(
        id="",
        tag_id=tag.id,
        title=f"Learning story: {tag.name}",
        listing=listing,
        keywords=keywords,
        ai_feedback=feedback,
        created_at=story_input.collected_at,
        provider_id="fallback",
    )
    story.id = _story_id(tag.id, serialize_story(story), story_input.collected_at.isoformat())
    return story


def serialize_story(story: Story) -> str:
    """Render the four sections; continuation lines are indented so reflection
    text can never fake a section marker at the start of a line."""
    lines = [f"{TITLE_MARKER}{story.title}", "", REFLECTIONS_MARKER, ""]
    for entry in story.listing:
        text = entry.text.replace("\n", "\n  ")
        line = f"- {text} ({entry.resource_url})"
        if entry.anchored_url is not None:
            line += f" (at {entry.anchored_url})"
        lines.append(line)
    lines.extend(["", KEYWORDS_MARKER, "", ", ".join(story.keywords), "", FEEDBACK_MARKER, ""])
    lines.append(story.ai_feedback)
    return "\n".join(lines)


def parse_story_sections(text: str) -> tuple[str, str, list[str], str]:
    """Split generated text on the section markers.

    Returns (title, reflections section, keywords, feedback). Raises
    StoryParseError when a marker is missing or out of order.
    """
    lines = text.splitlines()
    title = None
    marker_rows = {}
    for row, line in enumerate(lines):
        if title is None and line.startswith(TITLE_MARKER) and not line.startswith("##"):
            title = line[len(TITLE_MARKER):].strip()
            continue
        for marker in (REFLECTIONS_MARKER, KEYWORDS_MARKER, FEEDBACK_MARKER):
            if line.strip() == marker and marker not in marker_rows:
                marker_rows[marker] = row
    if title is None or not title:
        raise StoryParseError("missing title line")
    ordered = [REFLECTIONS_MARKER, KEYWORDS_MARKER, FEEDBACK_MARKER]
    if any(marker not in marker_rows for marker in ordered):
        raise StoryParseError("missing section marker")
    rows = [marker_rows[marker] for marker in ordered]
    if rows != sorted(rows):
        raise StoryParseError("section markers out of order")
    reflections_text = "\n".join(lines[rows[0] + 1 : rows[1]]).strip()
    keywords_text = "\n".join(lines[rows[1] + 1 : rows[2]]).strip()
    feedback = "\n".join(lines[rows[2] + 1 :]).strip()
    keywords = []
    for chunk in re.split(r"[,\n]", keywords_text):
        keyword = chunk.strip().strip("-• ").strip()
        if keyword and keyword not in keywords:
            keywords.append(keyword)
    return title, reflections_text, keywords, feedback


def generate_story(
    store: CurationStore,
    story_input: StoryInput,
    provider=None,
    fallback_enabled: bool = True,
) -> Story:
    """Obtain a story from the provider (or the fallback) and commit it.

    The provider contract is ``generate(PromptSpec) -> str`` plus a ``name``
    attribute, signalling failure with ProviderFailureError. Parse failures
    are treated the same as provider failures.
    """
    _require_nonempty(story_input)
    prompt = build_prompt(story_input)
    story: Optional[Story] = None
    if provider is not None:
        try:
            raw = provider.generate(prompt)
            title, _, keywords, feedback = parse_story_sections(raw)
            story = Story(
                id=_story_id(story_input.tag.id, raw, story_input.collected_at.isoformat()),
                tag_id=story_input.tag.id,
                title=title,
                listing=_listing_from_input(story_input),
                keywords=keywords,
                ai_feedback=feedback,
                created_at=story_input.collected_at,
                provider_id=provider.name,
            )
        except (ProviderFailureError, StoryParseError) as exc:
            if not fallback_enabled:
                if isinstance(exc, ProviderFailureError):
                    raise
                raise ProviderFailureError(f"provider output unusable: {exc}") from exc
    elif not fallback_enabled:
        raise ProviderFailureError("no provider configured and fallback disabled")
    if story is None:
        story = fallback_generate(story_input)
    return store.add_story(story)


def latest_story(store: CurationStore, tag_id: Optional[str] = None) -> Story:
    """Newest story learner-wide, or for one tag when ``tag_id`` is given."""
    return store.latest_story(tag_id)
