"""Text-generation provider contract and the bundled HTTP implementation.

A provider is anything with a ``name`` attribute and a
``generate(PromptSpec) -> str`` method that raises ProviderFailureError when
the text cannot be produced. The engine owns fallback behaviour; providers
only signal failure.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

import requests

from .errors import ProviderFailureError
from .stories import PromptSpec

DEFAULT_BASE_URL = "https://api.openai.com/v1"
DEFAULT_MODEL = "gpt-4o-mini"
DEFAULT_TIMEOUT = 60.0


@runtime_checkable
class TextProvider(Protocol):
    name: str

    def generate(self, prompt: PromptSpec) -> str: ...


class OpenAIChatProvider:
    """Chat-completions provider; credentials come from service configuration."""

    name = "openai"

    def __init__(
        self,
        api_key: str,
        model: str = DEFAULT_MODEL,
        base_url: str = DEFAULT_BASE_URL,
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
    ):
        self._api_key = api_key
        self._model = model
        self._base_url = base_url.rstrip("/")
        self._timeout = timeout
        self._session = session or requests.Session()

    def generate(self, prompt: PromptSpec) -> str:
        payload = {
            "model": self._model,
            "messages": [
                {"role": "system", "content": prompt.system_text},
                {"role": "user", "content": prompt.user_text},
            ],
        }
        try:
            response = self._session.post(
                f"{self._base_url}/chat/completions",
                json=payload,
                headers={"Authorization": f"Bearer {self._api_key}"},
                timeout=self._timeout,
            )
            response.raise_for_status()
            body = response.json()
            text = body["choices"][0]["message"]["content"]
        except requests.RequestException as exc:
            raise ProviderFailureError(f"provider request failed: {exc}") from exc
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderFailureError(f"provider response malformed: {exc}") from exc
        if not isinstance(text, str) or not text.strip():
            raise ProviderFailureError("provider returned empty text")
        return text
