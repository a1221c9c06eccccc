"""Repository-host clients: in-memory, local-directory, and GitHub.

The service picks the GitHub client when a token is configured and otherwise
exports into a local directory, so the export endpoint stays useful offline.
Repositories default to private.
"""

from __future__ import annotations

import base64
from pathlib import Path

import requests

from .errors import RemoteFailureError

GITHUB_API_URL = "https://api.github.com"
DEFAULT_TIMEOUT = 30.0


class InMemoryRepoHost:
    """Test double satisfying the repo-host contract."""

    def __init__(self):
        self.repos: dict[str, dict[str, str]] = {}

    def ensure_repository(self, name: str) -> str:
        self.repos.setdefault(name, {})
        return f"memory://{name}"

    def write_file(self, repo_name: str, path: str, content: str) -> None:
        self.repos[repo_name][path] = content


class LocalDirRepoHost:
    """Writes repositories as plain directories under a root path."""

    def __init__(self, root: Path):
        self.root = Path(root)

    def ensure_repository(self, name: str) -> str:
        target = self.root / name
        target.mkdir(parents=True, exist_ok=True)
        return target.resolve().as_uri()

    def write_file(self, repo_name: str, path: str, content: str) -> None:
        target = self.root / repo_name / path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")


class GitHubClient:
    """Minimal contents-API client: create the repo, then put files."""

    def __init__(
        self,
        token: str,
        api_url: str = GITHUB_API_URL,
        private: bool = True,
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
    ):
        self._token = token
        self._api_url = api_url.rstrip("/")
        self._private = private
        self._timeout = timeout
        self._session = session or requests.Session()
        self._owner: str | None = None

    def _headers(self) -> dict:
        return {
            "Authorization": f"Bearer {self._token}",
            "Accept": "application/vnd.github+json",
        }

    def _login(self) -> str:
        if self._owner is None:
            response = self._session.get(
                f"{self._api_url}/user", headers=self._headers(), timeout=self._timeout
            )
            self._raise_for_status(response, "resolving authenticated user")
            self._owner = response.json()["login"]
        return self._owner

    def ensure_repository(self, name: str) -> str:
        owner = self._login()
        response = self._session.post(
            f"{self._api_url}/user/repos",
            json={"name": name, "private": self._private, "auto_init": False},
            headers=self._headers(),
            timeout=self._timeout,
        )
        # 422 means the repository already exists; everything else is fatal.
        if response.status_code != 422:
            self._raise_for_status(response, f"creating repository {name!r}")
        return f"https://github.com/{owner}/{name}"

    def write_file(self, repo_name: str, path: str, content: str) -> None:
        owner = self._login()
        url = f"{self._api_url}/repos/{owner}/{repo_name}/contents/{path}"
        payload = {
            "message": f"update {path}",
            "content": base64.b64encode(content.encode("utf-8")).decode("ascii"),
        }
        existing = self._session.get(url, headers=self._headers(), timeout=self._timeout)
        if existing.status_code == 200:
            payload["sha"] = existing.json()["sha"]
        elif existing.status_code != 404:
            self._raise_for_status(existing, f"checking {path!r}")
        response = self._session.put(url, json=payload, headers=self._headers(), timeout=self._timeout)
        self._raise_for_status(response, f"writing {path!r}")

    def _raise_for_status(self, response: requests.Response, action: str) -> None:
        try:
            response.raise_for_status()
        except requests.RequestException as exc:
            raise RemoteFailureError(f"{action}: {exc}") from exc
