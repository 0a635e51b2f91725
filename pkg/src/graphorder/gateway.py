"""Minimal chat-completion client with retries, rate limiting, and a disk cache.

The wire shape (request path, response field path) is configurable so the
same client covers different hosted or local providers. Responses are passed
through byte-identical; the gateway never rewrites prompt or completion text.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import requests

from .errors import AuthError, EndpointUnavailable, PromptTooLarge

RETRYABLE_STATUS = {408, 429, 500, 502, 503, 504}


@dataclass
class ModelEndpoint:
    base_url: str
    model: str
    api_key_env: str = "GRAPHORDER_API_KEY"
    temperature: float = 0.0  # deterministic decoding by default
    timeout: float = 60.0
    max_retries: int = 3
    completion_path: str = "/chat/completions"
    text_field: str = "choices.0.message.content"
    rate_limit_per_s: Optional[float] = None

    def api_key(self) -> Optional[str]:
        return os.environ.get(self.api_key_env)


@dataclass(frozen=True)
class CompletionResult:
    text: str
    cached: bool
    latency: float
    attempts: int


class _RateLimiter:
    def __init__(self):
        self._lock = threading.Lock()
        self._last = 0.0

    def wait(self, per_second: Optional[float]):
        if not per_second:
            return
        interval = 1.0 / per_second
        with self._lock:
            now = time.monotonic()
            delay = self._last + interval - now
            self._last = max(now, self._last + interval)
        if delay > 0:
            time.sleep(delay)


_limiter = _RateLimiter()
_key_locks: dict[str, threading.Lock] = {}
_key_locks_guard = threading.Lock()


def _dig(payload, dotted: str):
    cur = payload
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def complete(ep: ModelEndpoint, prompt: str) -> CompletionResult:
    """Send one single-turn chat request and return the raw assistant text."""
    if not prompt:
        raise ValueError("prompt must be non-empty")
    url = ep.base_url.rstrip("/") + ep.completion_path
    headers = {"Content-Type": "application/json"}
    key = ep.api_key()
    if key:
        headers["Authorization"] = f"Bearer {key}"
    payload = {
        "model": ep.model,
        "temperature": ep.temperature,
        "messages": [{"role": "user", "content": prompt}],
    }
    start = time.monotonic()
    last_error: Optional[str] = None
    for attempt in range(1, ep.max_retries + 1):
        _limiter.wait(ep.rate_limit_per_s)
        try:
            resp = requests.post(url, json=payload, headers=headers, timeout=ep.timeout)
        except requests.RequestException as exc:
            last_error = str(exc)
        else:
            if resp.status_code in (401, 403):
                raise AuthError(f"endpoint rejected credentials (HTTP {resp.status_code})")
            if resp.status_code == 413:
                raise PromptTooLarge("endpoint rejected the prompt as too large")
            if resp.status_code == 200:
                try:
                    text = _dig(resp.json(), ep.text_field)
                except (KeyError, IndexError, ValueError) as exc:
                    raise EndpointUnavailable(f"malformed response body: {exc}") from exc
                return CompletionResult(
                    text=str(text),
                    cached=False,
                    latency=time.monotonic() - start,
                    attempts=attempt,
                )
            last_error = f"HTTP {resp.status_code}"
            if resp.status_code not in RETRYABLE_STATUS:
                break
        if attempt < ep.max_retries:
            time.sleep(min(2 ** (attempt - 1) * 0.1, 5.0))
    raise EndpointUnavailable(f"gave up after {ep.max_retries} attempts: {last_error}")


def cache_key(ep: ModelEndpoint, prompt: str) -> str:
    blob = f"{ep.model}\x00{ep.temperature!r}\x00{prompt}".encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def cached_complete(ep: ModelEndpoint, prompt: str, cache_dir: str | Path) -> CompletionResult:
    """complete() behind a one-file-per-key disk cache.

    Identical (model, temperature, prompt) triples never hit the network
    twice; at most one request is in flight per cache key.
    """
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    key = cache_key(ep, prompt)
    path = cache_dir / f"{key}.json"

    with _key_locks_guard:
        lock = _key_locks.setdefault(key, threading.Lock())
    with lock:
        if path.exists():
            try:
                entry = json.loads(path.read_text())
                return CompletionResult(str(entry["text"]), cached=True, latency=0.0, attempts=0)
            except (json.JSONDecodeError, KeyError, OSError):
                pass  # corrupt entry: refetch and rewrite
        result = complete(ep, prompt)
        entry = {
            "model": ep.model,
            "temperature": ep.temperature,
            "prompt_sha256": hashlib.sha256(prompt.encode()).hexdigest(),
            "text": result.text,
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, ensure_ascii=False))
        tmp.replace(path)
        return result
