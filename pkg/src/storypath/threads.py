"""Adapting stories into numbered social-media threads.

The splitter is greedy at word boundaries and never rewrites text: every post
body (before its numbering suffix) is an exact substring of the source text,
except for pieces of words longer than the per-post budget, which are
hard-split. Joining the bodies back with single spaces therefore reproduces
the story text up to whitespace collapsed at split points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import EmptyStoryError
from .models import Story
from .stories import serialize_story

DEFAULT_NUMBERING = " ({index}/{total})"

# Profiles are configuration, not platform facts; override via ServiceConfig.
DEFAULT_PROFILES = {
    "x": ("x", 280),
    "generic": ("generic", 2000),
}

_NUMBERING_HEADROOM = 20
_WORD_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class PlatformProfile:
    name: str
    char_limit: int
    numbering_format: str = DEFAULT_NUMBERING

    def __post_init__(self):
        if self.char_limit <= 0:
            raise ValueError("char_limit must be positive")
        nominal = len(self.render_numbering(99, 99))
        if self.char_limit < nominal + _NUMBERING_HEADROOM:
            raise ValueError(
                f"char_limit {self.char_limit} leaves less than {_NUMBERING_HEADROOM} "
                f"characters beside the numbering suffix"
            )

    def render_numbering(self, index: int, total: int) -> str:
        return self.numbering_format.format(index=index, total=total)


def default_profiles() -> dict[str, PlatformProfile]:
    return {key: PlatformProfile(name=name, char_limit=limit) for key, (name, limit) in DEFAULT_PROFILES.items()}


@dataclass(frozen=True)
class ThreadPost:
    index: int
    total: int
    body: str

    def to_dict(self) -> dict:
        return {"index": self.index, "total": self.total, "body": self.body}


def _greedy_pieces(text: str, budget: int) -> list[str]:
    """Exact-substring pieces of at most ``budget`` characters.

    Whitespace runs between pieces are consumed (they become the split
    points); whitespace inside a piece is preserved verbatim. Words longer
    than the budget are hard-split, and the final fragment of a hard-split
    word keeps absorbing following words greedily.
    """
    spans = [(m.start(), m.end()) for m in _WORD_RE.finditer(text)]
    pieces: list[str] = []
    i = 0
    while i < len(spans):
        start, end = spans[i]
        if end - start > budget:
            while end - start > budget:
                pieces.append(text[start : start + budget])
                start += budget
        cur_start, cur_end = start, end
        i += 1
        while i < len(spans) and spans[i][1] - cur_start <= budget:
            cur_end = spans[i][1]
            i += 1
        pieces.append(text[cur_start:cur_end])
    return pieces


def split_into_posts(text: str, profile: PlatformProfile) -> list[ThreadPost]:
    """Split raw text into numbered posts that respect the profile limit."""
    if not text.strip():
        raise EmptyStoryError("nothing to share: story text is empty")
    if len(text) <= profile.char_limit:
        return [ThreadPost(index=1, total=1, body=text)]
    digits = 1
    while True:
        widest = 10**digits - 1
        suffix_len = len(profile.render_numbering(widest, widest))
        budget = profile.char_limit - suffix_len
        if budget < 1:
            raise ValueError("char_limit too small for the numbering suffix")
        pieces = _greedy_pieces(text, budget)
        if len(pieces) <= widest:
            break
        digits += 1
    if len(pieces) == 1:
        # Whitespace-only overflow collapsed into a single piece.
        return [ThreadPost(index=1, total=1, body=pieces[0])]
    total = len(pieces)
    return [
        ThreadPost(index=i, total=total, body=piece + profile.render_numbering(i, total))
        for i, piece in enumerate(pieces, start=1)
    ]


def adapt_for_platform(story: Story, profile: PlatformProfile) -> list[ThreadPost]:
    """Re-render a story as a thread for one platform."""
    return split_into_posts(serialize_story(story), profile)
