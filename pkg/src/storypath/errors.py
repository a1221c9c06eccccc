"""Error taxonomy for the storypath service.

Every error carries a stable machine-readable ``code``; the HTTP layer maps
codes to response bodies verbatim, so changing a code is a breaking change.
"""

from __future__ import annotations


class StorypathError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


# --- curation store ---------------------------------------------------------

class InvalidUrlError(StorypathError):
    code = "invalid-url"


class UnknownResourceError(StorypathError):
    code = "unknown-resource"


class RatingOutOfRangeError(StorypathError):
    code = "rating-out-of-range"


class EmptyTextError(StorypathError):
    code = "empty-text"


class OffsetOnNonVideoError(StorypathError):
    code = "offset-on-non-video"


class EmptyNameError(StorypathError):
    code = "empty-name"


class UnknownTagError(StorypathError):
    code = "unknown-tag"


class SelfMergeError(StorypathError):
    code = "self-merge"


class NotAVideoError(StorypathError):
    code = "not-a-video"


# --- story engine -----------------------------------------------------------

class InsufficientResourcesError(StorypathError):
    code = "insufficient-resources"


class NoReflectionsError(StorypathError):
    code = "no-reflections"


class EmptyInputError(StorypathError):
    code = "empty-input"


class ProviderFailureError(StorypathError):
    code = "provider-failure"


class EmptyStoryError(StorypathError):
    code = "empty-story"


class NoStoryError(StorypathError):
    code = "no-story"


class UnknownStoryError(StorypathError):
    code = "unknown-story"


class UnknownPlatformError(StorypathError):
    code = "unknown-platform"


# --- exporter ---------------------------------------------------------------

class EmptyTagError(StorypathError):
    code = "empty-tag"


class MalformedLayoutError(StorypathError):
    code = "malformed-layout"


class RemoteFailureError(StorypathError):
    code = "remote-failure"


# --- activity monitor -------------------------------------------------------

class ClockSkewError(StorypathError):
    code = "clock-skew"


# --- persistence and service ------------------------------------------------

class CorruptStoreError(StorypathError):
    code = "corrupt-store"


class IoFailureError(StorypathError):
    code = "io-failure"


class UnauthorizedError(StorypathError):
    code = "unauthorized"


class UnknownJobError(StorypathError):
    code = "unknown-job"
