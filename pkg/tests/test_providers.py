import json

import pytest
import requests

from storypath.errors import ProviderFailureError, RemoteFailureError
from storypath.providers import OpenAIChatProvider
from storypath.repohost import GitHubClient
from storypath.stories import PromptSpec

PROMPT = PromptSpec(system_text="sys", user_text="user words")


class FakeResponse:
    def __init__(self, status_code=200, payload=None):
        self.status_code = status_code
        self._payload = payload if payload is not None else {}

    def json(self):
        return self._payload

    def raise_for_status(self):
        if self.status_code >= 400:
            raise requests.HTTPError(f"status {self.status_code}")


class FakeSession:
    def __init__(self, responses):
        self.responses = list(responses)
        self.calls = []

    def _next(self, method, url, **kwargs):
        self.calls.append((method, url, kwargs))
        result = self.responses.pop(0)
        if isinstance(result, Exception):
            raise result
        return result

    def get(self, url, **kwargs):
        return self._next("GET", url, **kwargs)

    def post(self, url, **kwargs):
        return self._next("POST", url, **kwargs)

    def put(self, url, **kwargs):
        return self._next("PUT", url, **kwargs)


def test_provider_sends_prompt_and_returns_text():
    session = FakeSession(
        [FakeResponse(payload={"choices": [{"message": {"content": "# T\n..."}}]})]
    )
    provider = OpenAIChatProvider(api_key="sk-test", session=session)
    text = provider.generate(PROMPT)
    assert text == "# T\n..."
    method, url, kwargs = session.calls[0]
    assert method == "POST"
    assert url.endswith("/chat/completions")
    messages = kwargs["json"]["messages"]
    assert messages[0] == {"role": "system", "content": "sys"}
    assert messages[1] == {"role": "user", "content": "user words"}
    assert kwargs["headers"]["Authorization"] == "Bearer sk-test"


def test_provider_wraps_http_errors():
    session = FakeSession([FakeResponse(status_code=503)])
    provider = OpenAIChatProvider(api_key="sk-test", session=session)
    with pytest.raises(ProviderFailureError):
        provider.generate(PROMPT)


def test_provider_wraps_timeouts():
    session = FakeSession([requests.Timeout("slow")])
    provider = OpenAIChatProvider(api_key="sk-test", session=session)
    with pytest.raises(ProviderFailureError):
        provider.generate(PROMPT)


def test_provider_rejects_malformed_payload():
    session = FakeSession([FakeResponse(payload={"nope": True})])
    provider = OpenAIChatProvider(api_key="sk-test", session=session)
    with pytest.raises(ProviderFailureError):
        provider.generate(PROMPT)


def test_provider_rejects_empty_text():
    session = FakeSession([FakeResponse(payload={"choices": [{"message": {"content": "  "}}]})])
    provider = OpenAIChatProvider(api_key="sk-test", session=session)
    with pytest.raises(ProviderFailureError):
        provider.generate(PROMPT)


# -- GitHub client ----------------------------------------------------------------


def test_github_client_creates_repo_and_writes_file():
    session = FakeSession(
        [
            FakeResponse(payload={"login": "learner"}),  # GET /user
            FakeResponse(status_code=201),  # POST /user/repos
            FakeResponse(status_code=404),  # GET contents (absent)
            FakeResponse(status_code=201),  # PUT contents
        ]
    )
    client = GitHubClient(token="ghp-test", session=session)
    url = client.ensure_repository("vue-basics")
    assert url == "https://github.com/learner/vue-basics"
    client.write_file("vue-basics", "README.md", "# story")
    method, put_url, kwargs = session.calls[-1]
    assert method == "PUT"
    assert put_url.endswith("/repos/learner/vue-basics/contents/README.md")
    assert kwargs["json"]["content"]  # base64 payload present
    repo_call = session.calls[1]
    assert repo_call[2]["json"]["private"] is True


def test_github_client_tolerates_existing_repo():
    session = FakeSession(
        [
            FakeResponse(payload={"login": "learner"}),
            FakeResponse(status_code=422),  # name already exists
        ]
    )
    client = GitHubClient(token="ghp-test", session=session)
    assert client.ensure_repository("vue-basics") == "https://github.com/learner/vue-basics"


def test_github_client_updates_existing_file_with_sha():
    session = FakeSession(
        [
            FakeResponse(payload={"login": "learner"}),
            FakeResponse(status_code=200, payload={"sha": "abc123"}),
            FakeResponse(status_code=200),
        ]
    )
    client = GitHubClient(token="ghp-test", session=session)
    client.write_file("vue-basics", "README.md", "# story v2")
    _, _, kwargs = session.calls[-1]
    assert kwargs["json"]["sha"] == "abc123"


def test_github_client_raises_remote_failure():
    session = FakeSession([FakeResponse(status_code=401)])
    client = GitHubClient(token="bad", session=session)
    with pytest.raises(RemoteFailureError):
        client.ensure_repository("x")
