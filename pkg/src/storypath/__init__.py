"""storypath: curation, learning stories, threads, export, and activity monitoring."""

__version__ = "0.1.0"

from .activity import (
    ActivityEvent,
    ActivitySnapshot,
    NudgePayload,
    NudgePolicy,
    RadarDatum,
    compute_snapshot,
    evaluate_nudge,
    radar_data,
)
from .errors import StorypathError
from .export import (
    RemotePushReceipt,
    RepoLayout,
    build_repo_layout,
    parse_repo_layout,
    push_repository,
    render_resource_file,
)
from .models import Reflection, Resource, Story, StoryEntry, Tag, TagAssignment
from .persistence import load_store, persist_store
from .stories import (
    PromptSpec,
    StoryInput,
    build_prompt,
    collect_story_input,
    extract_keywords,
    fallback_generate,
    generate_story,
    latest_story,
    serialize_story,
)
from .store import CurationStore, anchored_url, normalize_tag_name, normalize_url
from .threads import PlatformProfile, ThreadPost, adapt_for_platform, split_into_posts

__all__ = [
    "ActivityEvent",
    "ActivitySnapshot",
    "CurationStore",
    "NudgePayload",
    "NudgePolicy",
    "PlatformProfile",
    "PromptSpec",
    "RadarDatum",
    "Reflection",
    "RemotePushReceipt",
    "RepoLayout",
    "Resource",
    "Story",
    "StoryEntry",
    "StoryInput",
    "StorypathError",
    "Tag",
    "TagAssignment",
    "ThreadPost",
    "adapt_for_platform",
    "anchored_url",
    "build_prompt",
    "build_repo_layout",
    "collect_story_input",
    "compute_snapshot",
    "evaluate_nudge",
    "extract_keywords",
    "fallback_generate",
    "generate_story",
    "latest_story",
    "load_store",
    "normalize_tag_name",
    "normalize_url",
    "parse_repo_layout",
    "persist_store",
    "push_repository",
    "radar_data",
    "render_resource_file",
    "serialize_story",
    "split_into_posts",
]
