"""Construction of every generation request the engine issues.

The topic anchor is injected verbatim into the system prompt of every
post-creation request; machine-readable context lines (``Keywords:``,
``Genre:``, ``Sentence:``, ``Emotion:``) let the offline mock read its
inputs back out of the prompt text.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

from .backends import ABSTRACT_MARKER, MONOLOGUE_MARKER, GenerationRequest
from .domain import (
    DialogueConfig,
    Generated,
    MonologueConfig,
    SamplingParams,
    ScribbleError,
    ScriptEvent,
    TopicAnchor,
    UserDirection,
    UserLine,
    creativity_to_sampling,
)

ABSTRACT_TEMPERATURE = 0.2

MAX_TOKENS_ABSTRACT = 200
MAX_TOKENS_SCRIPT = 700
MAX_TOKENS_CONTINUATION = 400

# Replay budget: once the transcript outgrows this, the oldest events are
# elided from continuation prompts. The anchor is never elided.
TRANSCRIPT_CHAR_BUDGET = 16_000

LINE_PREFIX = "CHARACTER LINE:"
DIRECTION_PREFIX = "DIRECTION:"


class EmptyTranscript(ScribbleError):
    code = "EmptyTranscript"


class PromptKind(enum.Enum):
    ABSTRACT = "abstract"
    INITIAL_SCRIPT = "initial_script"
    CONTINUATION = "continuation"
    MONOLOGUE = "monologue"


@dataclass(frozen=True)
class PromptTemplates:
    """Instruction texts, one per request kind.

    Only the instruction prose is templated; marker tags, the anchor line,
    and the context lines are appended structurally so overriding a template
    cannot break the invariants the rest of the system relies on.
    """

    abstract: str
    initial_script: str
    continuation: str
    monologue: str

    @classmethod
    def from_dir(cls, directory: Path | str) -> "PromptTemplates":
        """Load overrides from ``<kind>.txt`` files; missing files keep defaults."""
        directory = Path(directory)
        values = {}
        for spec_field in fields(cls):
            path = directory / f"{spec_field.name}.txt"
            if path.exists():
                values[spec_field.name] = path.read_text(encoding="utf-8").strip()
            else:
                values[spec_field.name] = getattr(DEFAULT_TEMPLATES, spec_field.name)
        return cls(**values)


DEFAULT_TEMPLATES = PromptTemplates(
    abstract=(
        "You are a story planner for improv rehearsal scripts. Write a brief"
        " abstract of one to three sentences that fixes the central topic of"
        " a scene. Weave in every keyword and match the genre. Output only"
        " the abstract."
    ),
    initial_script=(
        "You are a scriptwriter for improvisational theater rehearsal. Write"
        " a one-line summary starting with \"SUMMARY:\" and then the scene's"
        " dialogue after a \"SCRIPT:\" line. Dialogue lines use the form"
        " NAME: line. Keep the scene playable by two actors and leave room"
        " for interpretation."
    ),
    continuation=(
        "You are continuing an improv rehearsal scene. Keep the story"
        " grounded in the abstract below. Continue the dialogue in the same"
        " NAME: line form. Treat CHARACTER LINE inputs as lines spoken"
        " verbatim by that character, and DIRECTION inputs as events to fold"
        " into the scene."
    ),
    monologue=(
        "You write single-speaker rehearsal monologues. Use the given"
        " sentence as the speaker's situation and let the stated emotion"
        " color every line. Output only the monologue text."
    ),
)


def render_injection(event: UserLine | UserDirection) -> str:
    """Render a user injection the way it is sent to the provider."""
    if isinstance(event, UserLine):
        return f"{LINE_PREFIX} {event.speaker}: {event.text}"
    return f"{DIRECTION_PREFIX} {event.text}"


def _anchored_system(instructions: str, anchor: TopicAnchor) -> str:
    return f"{instructions}\nStory abstract: {anchor.abstract_text}"


def build_abstract_request(
    config: DialogueConfig, templates: PromptTemplates | None = None
) -> GenerationRequest:
    """Request a 1-3 sentence abstract weaving all keywords into the genre.

    Runs at a fixed low temperature regardless of the creativity setting:
    the anchor must be stable, the script is where randomness belongs.
    """
    t = templates or DEFAULT_TEMPLATES
    user = (
        f"Keywords: {', '.join(config.keywords)}\n"
        f"Genre: {config.genre}\n\n"
        f"Write the abstract for a {config.genre} scene that uses every"
        " keyword above."
    )
    return GenerationRequest(
        system_prompt=f"{ABSTRACT_MARKER} {t.abstract}",
        messages=(("user", user),),
        sampling=SamplingParams(temperature=ABSTRACT_TEMPERATURE),
        max_tokens=MAX_TOKENS_ABSTRACT,
    )


def build_initial_script_request(
    config: DialogueConfig,
    anchor: TopicAnchor,
    templates: PromptTemplates | None = None,
) -> GenerationRequest:
    t = templates or DEFAULT_TEMPLATES
    user = (
        f"Genre: {config.genre}\n"
        f"Keywords: {', '.join(config.keywords)}\n\n"
        "Write the opening of the scene now, summary first, then the"
        " dialogue."
    )
    return GenerationRequest(
        system_prompt=_anchored_system(t.initial_script, anchor),
        messages=(("user", user),),
        sampling=creativity_to_sampling(config.creativity),
        max_tokens=MAX_TOKENS_SCRIPT,
    )


def _window(transcript: Sequence[ScriptEvent]) -> list[ScriptEvent]:
    events = list(transcript)
    sizes = [len(_event_content(event)) for event in events]
    total = sum(sizes)
    while total > TRANSCRIPT_CHAR_BUDGET and len(events) > 1:
        events.pop(0)
        total -= sizes.pop(0)
    return events


def _event_content(event: ScriptEvent) -> str:
    if isinstance(event, Generated):
        return event.text
    return render_injection(event)


def build_continuation_request(
    anchor: TopicAnchor,
    transcript: Sequence[ScriptEvent],
    injection: UserLine | UserDirection,
    sampling: SamplingParams,
    templates: PromptTemplates | None = None,
) -> GenerationRequest:
    """Replay the transcript and append the new injection as the final message.

    Generated events replay as assistant messages, user injections as user
    messages with their classification prefix.
    """
    if not any(isinstance(event, Generated) for event in transcript):
        raise EmptyTranscript("cannot continue before an initial script exists")
    t = templates or DEFAULT_TEMPLATES
    messages: list[tuple[str, str]] = []
    for event in _window(transcript):
        role = "assistant" if isinstance(event, Generated) else "user"
        messages.append((role, _event_content(event)))
    messages.append(("user", render_injection(injection)))
    return GenerationRequest(
        system_prompt=_anchored_system(t.continuation, anchor),
        messages=tuple(messages),
        sampling=sampling,
        max_tokens=MAX_TOKENS_CONTINUATION,
    )


def build_monologue_request(
    config: MonologueConfig, templates: PromptTemplates | None = None
) -> GenerationRequest:
    t = templates or DEFAULT_TEMPLATES
    user = (
        f"Sentence: {config.sentence}\n"
        f"Emotion: {config.emotions}\n\n"
        "Write the monologue now, in first person."
    )
    return GenerationRequest(
        system_prompt=f"{MONOLOGUE_MARKER} {t.monologue}",
        messages=(("user", user),),
        sampling=creativity_to_sampling(config.creativity),
        max_tokens=MAX_TOKENS_SCRIPT,
    )
