"""Text-generation backends.

Two interchangeable implementations of one contract: an HTTP client for a
chat-completion provider, and a seeded deterministic mock whose output is a
pure function of (seed, request) so the whole tool can run and be tested
offline.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import time
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Protocol

import httpx

from .domain import SamplingParams, ScribbleError

DEFAULT_TIMEOUT = 60.0
RETRY_DELAYS = (1.0, 2.0)

DEFAULT_BASE_URL = "https://api.openai.com/v1"
DEFAULT_MODEL = "gpt-3.5-turbo"

# Marker tags the prompt layer places in system prompts so the mock can tell
# request kinds apart without natural-language understanding.
ABSTRACT_MARKER = "[[ABSTRACT]]"
MONOLOGUE_MARKER = "[[MONOLOGUE]]"

FALLBACK_CHARACTERS = ("ALEX", "BLAKE")


class BackendError(ScribbleError):
    """Base for generation failures; maps to HTTP 502 / exit code 2."""

    code = "BackendError"


class Timeout(BackendError):
    code = "Timeout"


class NetworkError(BackendError):
    code = "NetworkError"


class ProviderError(BackendError):
    code = "ProviderError"

    def __init__(self, message: str, *, status: int | None = None, body: str = ""):
        super().__init__(message)
        self.status = status
        self.body = body


class EmptyCompletion(BackendError):
    code = "EmptyCompletion"


@dataclass(frozen=True)
class GenerationRequest:
    """A backend-agnostic generation exchange: system prompt, chat messages,
    sampling parameters, and a token budget."""

    system_prompt: str
    messages: tuple[tuple[str, str], ...]
    sampling: SamplingParams
    max_tokens: int

    def __post_init__(self):
        object.__setattr__(
            self, "messages", tuple((role, content) for role, content in self.messages)
        )
        if not self.messages:
            raise ValueError("request must carry at least one message")
        for role, content in self.messages:
            if role not in ("user", "assistant"):
                raise ValueError(f"unknown message role: {role!r}")
            if not content:
                raise ValueError("message content must be nonempty")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


@dataclass(frozen=True)
class GenerationResponse:
    text: str
    backend_id: str
    usage: dict[str, int] | None = None


class Backend(Protocol):
    """What the session engine needs from a generator: one blocking call."""

    backend_id: str

    def generate(self, request: GenerationRequest) -> GenerationResponse: ...


def with_seed(request: GenerationRequest, seed: int | None) -> GenerationRequest:
    """Return a copy of the request carrying the given sampling seed."""
    if seed is None:
        return request
    return replace(request, sampling=replace(request.sampling, seed=seed))


class HttpBackend:
    """Client for a JSON chat-completion provider.

    Wire shape: POST {base_url}/chat/completions with
    ``{model, messages, temperature, max_tokens}`` and a bearer token;
    the completion is read from ``choices[0].message.content``.

    Timeouts and connection failures are retried up to twice with 1 s / 2 s
    backoff; provider-reported errors are not retried (a semantic failure
    will not improve, and retrying bills twice).
    """

    backend_id = "http"

    def __init__(
        self,
        api_key: str,
        base_url: str = DEFAULT_BASE_URL,
        model: str = DEFAULT_MODEL,
        *,
        timeout: float = DEFAULT_TIMEOUT,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.model = model
        self._url = base_url.rstrip("/") + "/chat/completions"
        self._sleep = sleep
        self._client = httpx.Client(
            timeout=timeout,
            transport=transport,
            headers={"Authorization": f"Bearer {api_key}"},
        )

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None) -> "HttpBackend":
        env = os.environ if env is None else env
        return cls(
            api_key=env.get("TLP_API_KEY", ""),
            base_url=env.get("TLP_API_BASE_URL", DEFAULT_BASE_URL),
            model=env.get("TLP_MODEL", DEFAULT_MODEL),
        )

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        payload = {
            "model": self.model,
            "messages": [{"role": "system", "content": request.system_prompt}]
            + [{"role": role, "content": content} for role, content in request.messages],
            "temperature": request.sampling.temperature,
            "max_tokens": request.max_tokens,
        }
        last_error: BackendError | None = None
        for attempt in range(1 + len(RETRY_DELAYS)):
            if attempt > 0:
                self._sleep(RETRY_DELAYS[attempt - 1])
            try:
                response = self._client.post(self._url, json=payload)
            except httpx.TimeoutException as exc:
                last_error = Timeout(f"provider call timed out: {exc}")
                continue
            except httpx.TransportError as exc:
                last_error = NetworkError(f"provider unreachable: {exc}")
                continue
            if response.status_code // 100 != 2:
                raise ProviderError(
                    f"provider returned HTTP {response.status_code}",
                    status=response.status_code,
                    body=response.text,
                )
            return self._parse_completion(response)
        assert last_error is not None
        raise last_error

    def _parse_completion(self, response: httpx.Response) -> GenerationResponse:
        try:
            body = response.json()
            text = body["choices"][0]["message"]["content"]
        except (ValueError, LookupError, TypeError) as exc:
            raise ProviderError(
                f"malformed provider response: {exc}", body=response.text
            ) from exc
        if not isinstance(text, str) or not text.strip():
            raise EmptyCompletion("provider returned an empty completion")
        usage = body.get("usage")
        return GenerationResponse(
            text=text,
            backend_id=self.backend_id,
            usage=usage if isinstance(usage, dict) else None,
        )


# --- deterministic mock -----------------------------------------------------

_KEYWORDS_RE = re.compile(r"^Keywords: (.+)$", re.MULTILINE)
_GENRE_RE = re.compile(r"^Genre: (.+)$", re.MULTILINE)
_SENTENCE_RE = re.compile(r"^Sentence: (.+)$", re.MULTILINE)
_EMOTION_RE = re.compile(r"^Emotion: (.+)$", re.MULTILINE)
_ANCHOR_LINE_RE = re.compile(r"^Story abstract: (.+)$", re.MULTILINE)
_ABSTRACT_KEYWORDS_RE = re.compile(r"\babout (.+)\.\s*$")

_ABSTRACT_TEMPLATES = (
    "A {genre} story about {keywords}.",
    "A small {genre} premise about {keywords}.",
    "An uneasy {genre} scenario about {keywords}.",
    "A late-night {genre} sketch about {keywords}.",
    "A stubborn {genre} vignette about {keywords}.",
)

_SCRIPT_LINES = (
    (
        "So it comes back to {kw} again.",
        "I told you to leave {kw} out of this.",
        "I can't. Everything here smells of {kw}.",
        "Then we face {kw} together, tonight.",
        "You make {kw} sound like a threat.",
        "Maybe it is. Maybe {kw} was never anything else.",
    ),
    (
        "Did you hear that? It sounded like {kw}.",
        "It's nothing. Stop talking about {kw}.",
        "You always say that when {kw} comes up.",
        "Because {kw} never did us any favors.",
        "Still, I dreamed of {kw} last night.",
        "Then the dream can keep {kw}. We move on.",
    ),
    (
        "They left a note about {kw} on the door.",
        "Burn it. I'm done with {kw}.",
        "Done? You built your whole life around {kw}.",
        "And look where {kw} got me.",
        "It got you here, with me and {kw}.",
        "Fine. One last round with {kw}, then never again.",
    ),
    (
        "Promise me you'll forget about {kw}.",
        "I can't promise anything about {kw}.",
        "Why does {kw} matter so much to you?",
        "Because without {kw} none of this makes sense.",
        "Sense is overrated. {kw} proved that.",
        "Then let {kw} prove one more thing tonight.",
    ),
    (
        "Quiet. I think {kw} is listening.",
        "Let {kw} listen. I have nothing to hide.",
        "Everyone says that until {kw} answers back.",
        "If {kw} answers, I'll ask my question.",
        "Your questions are how {kw} found us.",
        "Good. I'm tired of waiting for {kw}.",
    ),
)

_MONOLOGUE_TEMPLATES = (
    "{sentence} I keep saying it like a fact, as if facts ever kept anyone"
    " warm. There is something {emotions} in the way the room holds still."
    " I came here to explain myself. Instead I am counting the cracks in"
    " the floor and calling each one by my own name.",
    "{sentence} That is the whole story, and it is not even mine anymore."
    " People tell me how to feel about it, and I nod, feeling {emotions}"
    " instead. Tonight I will say it once more, slowly, and see if it"
    " finally sounds true.",
    "They ask me how I am. {sentence} That is how I am. Every answer I own"
    " fits inside it, pressed flat, distinctly {emotions}. I practice"
    " smiling in the window of the bus. The glass never smiles back.",
    "{sentence} I wrote it on a receipt so I would stop rehearsing it. Now"
    " the receipt lives in my coat like a stone, something {emotions} sewn"
    " into the lining. If I take the coat off, I am lying. If I keep it on,"
    " I overheat. So I stand in doorways.",
    "There is a version of this where I laugh. {sentence} In that version"
    " the words weigh nothing, and the {emotions} taste of them washes out"
    " with coffee. I have not found that version. I keep the kettle on"
    " anyway.",
)


def _canonical_request(request: GenerationRequest) -> bytes:
    # sampling.seed is deliberately absent: the effective seed already keys
    # the digest, so a request-level seed and an equal backend default seed
    # must produce the same bytes.
    doc = {
        "system_prompt": request.system_prompt,
        "messages": [[role, content] for role, content in request.messages],
        "temperature": request.sampling.temperature,
        "max_tokens": request.max_tokens,
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")


def _pool_size(temperature: float) -> int:
    # int() truncates toward zero == floor for the clamped non-negative range
    return 1 + int(temperature * 3.0)


def _pick_variant(request: GenerationRequest, seed: int) -> int:
    digest = hashlib.sha256(
        f"{seed}|".encode("utf-8") + _canonical_request(request)
    ).digest()
    return int.from_bytes(digest[:8], "big") % _pool_size(request.sampling.temperature)


def _request_text(request: GenerationRequest) -> str:
    return "\n".join([request.system_prompt, *(c for _, c in request.messages)])


def _find_keywords(request: GenerationRequest) -> list[str]:
    text = _request_text(request)
    match = _KEYWORDS_RE.search(text)
    if match is None:
        anchor = _ANCHOR_LINE_RE.search(request.system_prompt)
        if anchor is None:
            return []
        match = _ABSTRACT_KEYWORDS_RE.search(anchor.group(1))
        if match is None:
            return []
    return [part.strip() for part in match.group(1).split(",") if part.strip()]


def _find_field(request: GenerationRequest, pattern: re.Pattern) -> str:
    match = pattern.search(_request_text(request))
    return match.group(1).strip() if match else ""


def _character_names(keywords: list[str]) -> tuple[str, str]:
    first = keywords[0].upper() if len(keywords) > 0 else FALLBACK_CHARACTERS[0]
    second = keywords[1].upper() if len(keywords) > 1 else FALLBACK_CHARACTERS[1]
    return first, second


def _script_lines(variant: int, keywords: list[str]) -> list[str]:
    fillers = keywords if keywords else ["the scene"]
    names = _character_names(keywords)
    lines = []
    for index, template in enumerate(_SCRIPT_LINES[variant % len(_SCRIPT_LINES)]):
        text = template.format(kw=fillers[index % len(fillers)])
        if index == 5 and len(fillers) > 6:
            text += " Think about " + ", ".join(fillers[6:]) + " as well."
        lines.append(f"{names[index % 2]}: {text}")
    return lines


def mock_generate(request: GenerationRequest, seed: int) -> GenerationResponse:
    """Deterministic stand-in for a text-generation provider.

    The output is a pure function of (seed, canonical request hash). The hash
    picks one variant out of a pool of ``1 + floor(temperature * 3)``, so the
    floor temperature of 0.2 always yields variant 0 and fully reproducible
    sessions. Grammar guarantees relied on by tests:

    - abstract requests get a single sentence containing every keyword and
      the genre;
    - script requests get a six-exchange two-character dialogue, characters
      derived from the first two keywords (fallback ALEX/BLAKE), keywords
      embedded round-robin (a trailing mention covers keywords past the
      sixth);
    - monologue requests get a single-speaker paragraph embedding the
      context sentence and the emotion words verbatim.
    """
    variant = _pick_variant(request, seed)
    if ABSTRACT_MARKER in request.system_prompt:
        keywords = _find_keywords(request)
        genre = _find_field(request, _GENRE_RE) or "improvised"
        text = _ABSTRACT_TEMPLATES[variant % len(_ABSTRACT_TEMPLATES)].format(
            genre=genre, keywords=", ".join(keywords) if keywords else "nothing at all"
        )
    elif MONOLOGUE_MARKER in request.system_prompt:
        sentence = _find_field(request, _SENTENCE_RE) or "It happened."
        emotions = _find_field(request, _EMOTION_RE) or "uncertain"
        text = _MONOLOGUE_TEMPLATES[variant % len(_MONOLOGUE_TEMPLATES)].format(
            sentence=sentence, emotions=emotions
        )
    else:
        lines = _script_lines(variant, _find_keywords(request))
        if not any(role == "assistant" for role, _ in request.messages):
            keywords = _find_keywords(request)
            genre = _find_field(request, _GENRE_RE) or "improvised"
            summary = "A {} scene about {}.".format(
                genre, ", ".join(keywords) if keywords else "an empty stage"
            )
            lines = [f"SUMMARY: {summary}", "SCRIPT:", *lines]
        text = "\n".join(lines)
    prompt_tokens = sum(len(content.split()) for _, content in request.messages)
    return GenerationResponse(
        text=text,
        backend_id="mock",
        usage={
            "prompt_tokens": prompt_tokens,
            "completion_tokens": len(text.split()),
        },
    )


class MockBackend:
    """Offline backend wrapping :func:`mock_generate` with a default seed.

    A per-request seed in ``sampling.seed`` takes precedence, so callers can
    reproduce a session without reconstructing the backend.
    """

    backend_id = "mock"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        seed = request.sampling.seed if request.sampling.seed is not None else self.seed
        return mock_generate(request, seed)


def backend_from_env(
    name: str | None = None,
    seed: int | None = None,
    env: Mapping[str, str] | None = None,
):
    """Build the configured backend: ``mock`` (default) or ``http``."""
    env = os.environ if env is None else env
    name = name or env.get("TLP_BACKEND", "mock")
    if name == "mock":
        if seed is None:
            seed = int(env.get("TLP_SEED", "0"))
        return MockBackend(seed=seed)
    if name == "http":
        return HttpBackend.from_env(env)
    raise ValueError(f"unknown backend {name!r} (expected 'mock' or 'http')")
