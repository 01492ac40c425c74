"""Session lifecycle: the dialogue state machine, one-shot monologues, and
the emotion-swap rehearsal exercise.

Sessions are immutable values; every operation returns a new session, so a
failed backend call can never leave a half-updated transcript behind.
"""

from __future__ import annotations

import enum
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .backends import Backend, with_seed
from .domain import (
    DialogueConfig,
    EmptyEmotion,
    EmptyInjection,
    EmotionTooLong,
    Generated,
    MAX_EMOTIONS_LEN,
    MonologueConfig,
    ScribbleError,
    ScriptEvent,
    TopicAnchor,
    UserDirection,
    UserLine,
    creativity_to_sampling,
)
from .prompts import (
    PromptTemplates,
    build_abstract_request,
    build_continuation_request,
    build_initial_script_request,
    build_monologue_request,
)
from .screenplay import (
    ScreenplayDocument,
    emit_export,
    is_speaker_name,
    parse_raw_script,
)


class SessionFinalized(ScribbleError):
    code = "SessionFinalized"


class NotFinalized(ScribbleError):
    code = "NotFinalized"


class AbstractEmpty(ScribbleError):
    code = "AbstractEmpty"


class SessionState(enum.Enum):
    DRAFTING = "drafting"
    FINALIZED = "finalized"


@dataclass(frozen=True)
class Session:
    """A dialogue session: config, topic anchor, append-only transcript,
    and (once finalized) the structured screenplay."""

    id: str
    config: DialogueConfig
    anchor: TopicAnchor
    transcript: tuple[ScriptEvent, ...]
    state: SessionState
    final_document: ScreenplayDocument | None
    created_at: datetime

    def __post_init__(self):
        object.__setattr__(self, "transcript", tuple(self.transcript))
        if not self.transcript or not isinstance(self.transcript[0], Generated):
            raise ValueError("transcript must start with a generated script")
        if (self.final_document is not None) != (self.state is SessionState.FINALIZED):
            raise ValueError("final_document present iff session is finalized")


@dataclass(frozen=True)
class Monologue:
    """A generated monologue plus its current emotion label.

    ``source_id`` links an emotion-swapped copy back to the monologue it was
    derived from.
    """

    id: str
    config: MonologueConfig
    text: str
    emotion_label: str
    source_id: str | None = None


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


def classify_injection(text: str) -> UserLine | UserDirection:
    """Sort a mid-session user input into a character line or a direction.

    The text before the first colon is taken as a speaker name when it looks
    like one (see :func:`is_speaker_name`); everything else, including text
    with no colon at all, is a narrative direction.
    """
    cleaned = text.strip()
    if not cleaned:
        raise EmptyInjection("injection text is required", field="text")
    head, sep, rest = cleaned.partition(":")
    if sep and is_speaker_name(head) and rest.strip():
        return UserLine(speaker=head.strip(), text=rest.strip())
    return UserDirection(text=cleaned)


def create_dialogue_session(
    config: DialogueConfig,
    backend: Backend,
    seed: int | None = None,
    templates: PromptTemplates | None = None,
) -> Session:
    """Run the idea-input stage: generate the topic anchor, then the initial
    script grounded in it. No session exists unless both calls succeed."""
    abstract_request = with_seed(build_abstract_request(config, templates), seed)
    abstract = backend.generate(abstract_request).text.strip()
    if not abstract:
        raise AbstractEmpty("abstract generation returned empty text")
    anchor = TopicAnchor(abstract_text=abstract)
    script_request = with_seed(
        build_initial_script_request(config, anchor, templates), seed
    )
    script = backend.generate(script_request).text.strip()
    return Session(
        id=_new_id(),
        config=config,
        anchor=anchor,
        transcript=(Generated(text=script),),
        state=SessionState.DRAFTING,
        final_document=None,
        created_at=datetime.now(timezone.utc),
    )


def continue_session(
    session: Session,
    injection_text: str,
    backend: Backend,
    seed: int | None = None,
    templates: PromptTemplates | None = None,
) -> Session:
    """Append the classified injection and the generated follow-up.

    The transcript grows by exactly two events; on any backend failure the
    original session is returned to the caller untouched (it is never
    mutated in the first place).
    """
    if session.state is not SessionState.DRAFTING:
        raise SessionFinalized("session is finalized; no further continuation")
    event = classify_injection(injection_text)
    sampling = creativity_to_sampling(session.config.creativity, seed=seed)
    request = build_continuation_request(
        session.anchor, session.transcript, event, sampling, templates
    )
    text = backend.generate(request).text.strip()
    return replace(session, transcript=session.transcript + (event, Generated(text=text)))


def render_transcript(transcript: tuple[ScriptEvent, ...]) -> str:
    """Flatten the transcript to raw script text for the formatter: user
    lines become "SPEAKER: text" cue lines and directions become their own
    action paragraphs."""
    parts = []
    for event in transcript:
        if isinstance(event, Generated):
            parts.append(event.text)
        elif isinstance(event, UserLine):
            parts.append(f"{event.speaker}: {event.text}")
        else:
            parts.append(event.text)
    return "\n\n".join(parts)


def finalize_session(session: Session) -> Session:
    """Reformat the whole transcript into a screenplay document; terminal."""
    if session.state is not SessionState.DRAFTING:
        raise SessionFinalized("session is already finalized")
    document = parse_raw_script(render_transcript(session.transcript))
    return replace(
        session, state=SessionState.FINALIZED, final_document=document
    )


def export_session(session: Session) -> bytes:
    """The bundled .txt for a finalized dialogue session."""
    if session.state is not SessionState.FINALIZED:
        raise NotFinalized("finalize the session before exporting")
    assert session.final_document is not None
    return emit_export(session.config, session.anchor.abstract_text, session.final_document)


def create_monologue(
    config: MonologueConfig,
    backend: Backend,
    seed: int | None = None,
    templates: PromptTemplates | None = None,
) -> Monologue:
    request = with_seed(build_monologue_request(config, templates), seed)
    text = backend.generate(request).text.strip()
    return Monologue(
        id=_new_id(),
        config=config,
        text=text,
        emotion_label=config.emotions,
    )


def swap_emotion(monologue: Monologue, new_emotion: str) -> Monologue:
    """The rehearsal exercise: same lines, opposite (or any other) emotion.

    Returns a new monologue whose text is byte-identical and whose
    ``source_id`` points at the original.
    """
    label = new_emotion.strip()
    if not label:
        raise EmptyEmotion("emotion is required", field="emotion")
    if len(label) > MAX_EMOTIONS_LEN:
        raise EmotionTooLong(
            f"emotions exceed {MAX_EMOTIONS_LEN} characters", field="emotion"
        )
    return Monologue(
        id=_new_id(),
        config=monologue.config,
        text=monologue.text,
        emotion_label=label,
        source_id=monologue.id,
    )


def export_monologue(monologue: Monologue) -> bytes:
    """The bundled .txt for a monologue; available immediately."""
    return emit_export(monologue.config, monologue.emotion_label, monologue.text)
