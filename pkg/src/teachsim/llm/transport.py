"""Chat-completion transports.

``HttpChatTransport`` talks to an OpenAI-style JSON endpoint.  The
recording and replay transports exist so that every test of the teaching
loop runs without network access: record once, replay byte-for-byte.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol, Sequence


class TransportError(RuntimeError):
    pass


@dataclass(frozen=True)
class ChatMessage:
    role: str  # "system" | "user" | "assistant"
    content: str

    def to_doc(self) -> dict:
        return {"role": self.role, "content": self.content}

    @classmethod
    def from_doc(cls, doc: dict) -> "ChatMessage":
        return cls(role=doc["role"], content=doc["content"])


class ChatTransport(Protocol):
    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        ...


class HttpChatTransport:
    """POSTs {model, messages, temperature} and reads choices[0].message.content.

    The API key is read from the environment by default so that credentials
    never appear in configs or transcripts.
    """

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: str | None = None,
        api_key_env: str = "CHAT_API_KEY",
        timeout: float = 60.0,
        max_retries: int = 2,
        client=None,
    ):
        import httpx

        self.endpoint = endpoint
        self.model = model
        key = api_key if api_key is not None else os.environ.get(api_key_env)
        if not key:
            raise TransportError(
                f"no API key: pass api_key or set the {api_key_env} environment variable"
            )
        self._headers = {"Authorization": f"Bearer {key}"}
        self.max_retries = max_retries
        self._client = client or httpx.Client(timeout=timeout)

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        import httpx

        payload = {
            "model": self.model,
            "messages": [m.to_doc() for m in messages],
            "temperature": temperature,
        }
        last_error = None
        for attempt in range(self.max_retries + 1):
            try:
                response = self._client.post(
                    self.endpoint, json=payload, headers=self._headers
                )
                if response.status_code >= 500:
                    last_error = TransportError(f"server error {response.status_code}")
                elif response.status_code >= 400:
                    raise TransportError(
                        f"request rejected ({response.status_code}): {response.text[:200]}"
                    )
                else:
                    body = response.json()
                    return body["choices"][0]["message"]["content"]
            except httpx.TransportError as exc:
                last_error = exc
            if attempt < self.max_retries:
                time.sleep(2**attempt)
        raise TransportError(f"giving up after {self.max_retries + 1} attempts: {last_error}")


class RecordingTransport:
    """Wraps a transport and captures every exchange; save() writes JSONL."""

    def __init__(self, inner: ChatTransport):
        self.inner = inner
        self.records: list[dict] = []

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        reply = self.inner.complete(messages, temperature)
        self.records.append(
            {
                "request": {
                    "temperature": temperature,
                    "messages": [m.to_doc() for m in messages],
                },
                "reply": reply,
            }
        )
        return reply

    def save(self, path: str | Path) -> None:
        with open(path, "w") as handle:
            for record in self.records:
                handle.write(json.dumps(record) + "\n")


class ReplayTransport:
    """Returns recorded replies in order.

    With strict=True (default) each request's messages must match the
    recording exactly; the point of replay tests is byte fidelity.
    """

    def __init__(self, records: Sequence[dict], strict: bool = True):
        self.records = list(records)
        self.strict = strict
        self.cursor = 0

    @classmethod
    def load(cls, path: str | Path, strict: bool = True) -> "ReplayTransport":
        records = [
            json.loads(line)
            for line in Path(path).read_text().splitlines()
            if line.strip()
        ]
        return cls(records, strict=strict)

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        if self.cursor >= len(self.records):
            raise TransportError(f"replay exhausted after {len(self.records)} exchanges")
        record = self.records[self.cursor]
        self.cursor += 1
        if self.strict:
            got = [m.to_doc() for m in messages]
            expected = record["request"]["messages"]
            if got != expected:
                index = next(
                    (i for i, (g, e) in enumerate(zip(got, expected)) if g != e),
                    min(len(got), len(expected)),
                )
                raise TransportError(
                    f"replay mismatch at exchange {self.cursor - 1}, message {index}: "
                    f"got {got[index] if index < len(got) else '<missing>'!r}, "
                    f"expected {expected[index] if index < len(expected) else '<missing>'!r}"
                )
        return record["reply"]


class StubTransport:
    """Computes replies from the message history; for tests."""

    def __init__(self, fn: Callable[[Sequence[ChatMessage]], str]):
        self.fn = fn

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        return self.fn(messages)
