"""Service configuration: YAML file, environment overrides, CLI flags.

Precedence, lowest to highest: built-in defaults, config file, environment
variables, CLI flags. Credentials only ever come from the environment or the
config file and are never echoed back by the service.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from datetime import timedelta
from pathlib import Path
from typing import Optional

import yaml

from .activity import NudgePolicy
from .threads import PlatformProfile, default_profiles

ENV_PROVIDER_KEY = "STORYPATH_PROVIDER_KEY"
ENV_REPO_TOKEN = "STORYPATH_REPO_TOKEN"
ENV_CONFIG_PATH = "STORYPATH_CONFIG"

DEFAULT_LISTEN = "127.0.0.1:8800"
DEFAULT_DATA_PATH = Path("storypath-data.json")


@dataclass
class ServiceConfig:
    listen_address: str = DEFAULT_LISTEN
    data_path: Path = DEFAULT_DATA_PATH
    provider_credentials: Optional[str] = None
    provider_model: str = "gpt-4o-mini"
    provider_base_url: str = "https://api.openai.com/v1"
    repo_host_credentials: Optional[str] = None
    repo_host_api_url: str = "https://api.github.com"
    export_dir: Optional[Path] = None
    fallback_enabled: bool = True
    background_generation: bool = False
    platform_profiles: dict[str, PlatformProfile] = field(default_factory=default_profiles)
    nudge_policy: NudgePolicy = field(default_factory=NudgePolicy)
    auth_tokens: dict[str, str] = field(default_factory=dict)  # token -> learner id

    def __post_init__(self):
        if self.provider_credentials is None and not self.fallback_enabled:
            raise ValueError("fallback_enabled must be true when no provider credential is set")
        learners = list(self.auth_tokens.values())
        if len(learners) != len(set(learners)):
            raise ValueError("one active token per learner: duplicate learner ids in auth_tokens")

    def host_and_port(self) -> tuple[str, int]:
        host, _, port = self.listen_address.rpartition(":")
        if not host or not port.isdigit():
            raise ValueError(f"listen_address must be host:port, got {self.listen_address!r}")
        return host, int(port)

    def resolved_export_dir(self) -> Path:
        if self.export_dir is not None:
            return self.export_dir
        return Path(self.data_path).parent / "exports"


def _parse_profiles(raw: dict) -> dict[str, PlatformProfile]:
    profiles = {}
    for key, entry in raw.items():
        profiles[key] = PlatformProfile(
            name=entry.get("name", key),
            char_limit=int(entry["char_limit"]),
            numbering_format=entry.get("numbering_format", PlatformProfile.numbering_format),
        )
    return profiles


def _parse_nudge_policy(raw: dict) -> NudgePolicy:
    return NudgePolicy(
        enabled=bool(raw.get("enabled", False)),
        watched_domains=tuple(raw.get("watched_domains", ())),
        staleness_threshold=timedelta(seconds=float(raw.get("staleness_threshold_seconds", 3 * 86400))),
        min_interval_between_nudges=timedelta(
            seconds=float(raw.get("min_interval_seconds", 6 * 3600))
        ),
    )


def load_config(path: Optional[Path] = None, env: Optional[dict] = None) -> ServiceConfig:
    """Build a ServiceConfig from an optional YAML file plus the environment."""
    env = os.environ if env is None else env
    if path is None and env.get(ENV_CONFIG_PATH):
        path = Path(env[ENV_CONFIG_PATH])
    raw: dict = {}
    if path is not None:
        loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError(f"config file {path} must contain a mapping")
        raw = loaded
    kwargs: dict = {}
    if "listen_address" in raw:
        kwargs["listen_address"] = str(raw["listen_address"])
    if "data_path" in raw:
        kwargs["data_path"] = Path(raw["data_path"])
    if "provider_model" in raw:
        kwargs["provider_model"] = str(raw["provider_model"])
    if "provider_base_url" in raw:
        kwargs["provider_base_url"] = str(raw["provider_base_url"])
    if "repo_host_api_url" in raw:
        kwargs["repo_host_api_url"] = str(raw["repo_host_api_url"])
    if "export_dir" in raw:
        kwargs["export_dir"] = Path(raw["export_dir"])
    if "fallback_enabled" in raw:
        kwargs["fallback_enabled"] = bool(raw["fallback_enabled"])
    if "background_generation" in raw:
        kwargs["background_generation"] = bool(raw["background_generation"])
    if "platform_profiles" in raw:
        kwargs["platform_profiles"] = _parse_profiles(raw["platform_profiles"])
    if "nudge_policy" in raw:
        kwargs["nudge_policy"] = _parse_nudge_policy(raw["nudge_policy"])
    if "auth_tokens" in raw:
        kwargs["auth_tokens"] = {str(k): str(v) for k, v in raw["auth_tokens"].items()}
    provider_key = env.get(ENV_PROVIDER_KEY) or raw.get("provider_credentials")
    if provider_key:
        kwargs["provider_credentials"] = str(provider_key)
    repo_token = env.get(ENV_REPO_TOKEN) or raw.get("repo_host_credentials")
    if repo_token:
        kwargs["repo_host_credentials"] = str(repo_token)
    return ServiceConfig(**kwargs)
