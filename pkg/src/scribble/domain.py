"""Validated value types shared across the tool, plus the creativity mapping.

Everything here is an immutable value: configs, the topic anchor, sampling
parameters, and transcript events. Constructors enforce the same invariants
the ``validate_*`` helpers do, so deserialized objects are as trustworthy as
freshly validated user input.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_KEYWORDS = 10
MAX_KEYWORD_LEN = 64
MAX_GENRE_LEN = 64
MAX_SENTENCE_LEN = 500
MAX_EMOTIONS_LEN = 128

TEMPERATURE_MIN = 0.0
TEMPERATURE_MAX = 2.0


class ScribbleError(Exception):
    """Base class for every error the engine can raise.

    ``code`` is the machine-readable name surfaced by the CLI and the HTTP
    service; ``field`` names the offending input field when there is one.
    """

    code = "ScribbleError"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class ValidationError(ScribbleError):
    """User input failed validation; maps to HTTP 400 / exit code 1."""

    code = "ValidationError"


class EmptyKeyword(ValidationError):
    code = "EmptyKeyword"


class TooManyKeywords(ValidationError):
    code = "TooManyKeywords"


class KeywordTooLong(ValidationError):
    code = "KeywordTooLong"


class EmptyGenre(ValidationError):
    code = "EmptyGenre"


class GenreTooLong(ValidationError):
    code = "GenreTooLong"


class CreativityOutOfRange(ValidationError):
    code = "CreativityOutOfRange"


class EmptySentence(ValidationError):
    code = "EmptySentence"


class SentenceTooLong(ValidationError):
    code = "SentenceTooLong"


class EmptyEmotion(ValidationError):
    code = "EmptyEmotion"


class EmotionTooLong(ValidationError):
    code = "EmotionTooLong"


class EmptyInjection(ValidationError):
    code = "EmptyInjection"


def _check_creativity(value) -> float:
    try:
        creativity = float(value)
    except (TypeError, ValueError):
        raise CreativityOutOfRange(
            "creativity must be a number between 0 and 1", field="creativity"
        ) from None
    if not 0.0 <= creativity <= 1.0:
        raise CreativityOutOfRange(
            f"creativity must be between 0 and 1, got {creativity}",
            field="creativity",
        )
    return creativity


def _check_keywords(keywords) -> tuple[str, ...]:
    parsed = tuple(keywords)
    if not parsed:
        raise EmptyKeyword("at least one keyword is required", field="keywords")
    if len(parsed) > MAX_KEYWORDS:
        raise TooManyKeywords(
            f"at most {MAX_KEYWORDS} keywords are allowed, got {len(parsed)}",
            field="keywords",
        )
    for keyword in parsed:
        if not keyword or keyword != keyword.strip():
            raise EmptyKeyword("keywords must be nonempty", field="keywords")
        if len(keyword) > MAX_KEYWORD_LEN:
            raise KeywordTooLong(
                f"keyword exceeds {MAX_KEYWORD_LEN} characters: {keyword[:32]}...",
                field="keywords",
            )
    return parsed


def _check_genre(genre: str) -> str:
    if not genre or genre != genre.strip():
        raise EmptyGenre("genre is required", field="genre")
    if len(genre) > MAX_GENRE_LEN:
        raise GenreTooLong(
            f"genre exceeds {MAX_GENRE_LEN} characters", field="genre"
        )
    return genre


@dataclass(frozen=True)
class DialogueConfig:
    """The three idea inputs that seed a dialogue session."""

    keywords: tuple[str, ...]
    genre: str
    creativity: float

    def __post_init__(self):
        object.__setattr__(self, "keywords", _check_keywords(self.keywords))
        _check_genre(self.genre)
        object.__setattr__(self, "creativity", _check_creativity(self.creativity))


@dataclass(frozen=True)
class MonologueConfig:
    """The three inputs that seed a monologue: context sentence, emotion, creativity."""

    sentence: str
    emotions: str
    creativity: float

    def __post_init__(self):
        if not self.sentence or self.sentence != self.sentence.strip():
            raise EmptySentence("sentence is required", field="sentence")
        if len(self.sentence) > MAX_SENTENCE_LEN:
            raise SentenceTooLong(
                f"sentence exceeds {MAX_SENTENCE_LEN} characters", field="sentence"
            )
        if not self.emotions or self.emotions != self.emotions.strip():
            raise EmptyEmotion("emotion is required", field="emotions")
        if len(self.emotions) > MAX_EMOTIONS_LEN:
            raise EmotionTooLong(
                f"emotions exceed {MAX_EMOTIONS_LEN} characters", field="emotions"
            )
        object.__setattr__(self, "creativity", _check_creativity(self.creativity))


@dataclass(frozen=True)
class TopicAnchor:
    """The brief abstract that pins the story topic for a whole session.

    Immutable by construction; the prompt layer injects ``abstract_text``
    verbatim into every post-creation request.
    """

    abstract_text: str

    def __post_init__(self):
        if not self.abstract_text.strip():
            raise ValueError("anchor abstract_text must be nonempty")


@dataclass(frozen=True)
class SamplingParams:
    """Provider-facing sampling knobs. Temperature is clamped to [0, 2]."""

    temperature: float
    seed: int | None = None

    def __post_init__(self):
        clamped = min(max(float(self.temperature), TEMPERATURE_MIN), TEMPERATURE_MAX)
        object.__setattr__(self, "temperature", clamped)


@dataclass(frozen=True)
class Generated:
    """Text produced by the generation backend."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("generated text must be nonempty")


@dataclass(frozen=True)
class UserLine:
    """A character line injected by the user, e.g. speaker "Sara"."""

    speaker: str
    text: str

    def __post_init__(self):
        if not self.speaker or not self.text:
            raise ValueError("user line speaker and text must be nonempty")


@dataclass(frozen=True)
class UserDirection:
    """A narrative direction injected by the user, e.g. a sudden plot turn."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("user direction text must be nonempty")


ScriptEvent = Generated | UserLine | UserDirection


def validate_dialogue_config(keywords: str, genre: str, creativity) -> DialogueConfig:
    """Parse and validate the raw idea inputs for a dialogue session.

    Keywords arrive as one comma-separated string; each item is trimmed and
    empty items (stray commas) are dropped.
    """
    parts = [part.strip() for part in str(keywords).split(",")]
    parsed = tuple(part for part in parts if part)
    if not parsed:
        raise EmptyKeyword("at least one keyword is required", field="keywords")
    return DialogueConfig(
        keywords=parsed, genre=str(genre).strip(), creativity=creativity
    )


def validate_monologue_config(sentence: str, emotions: str, creativity) -> MonologueConfig:
    """Validate the raw monologue inputs; emotion text is kept verbatim."""
    return MonologueConfig(
        sentence=str(sentence).strip(),
        emotions=str(emotions).strip(),
        creativity=creativity,
    )


def creativity_to_sampling(creativity: float, seed: int | None = None) -> SamplingParams:
    """Map the 0-1 creativity knob linearly onto temperature in [0.2, 1.6].

    Written as (1 + 7c) / 5 rather than 0.2 + 1.4c so that the endpoints and
    midpoint come out exact in floating point.
    """
    value = _check_creativity(creativity)
    return SamplingParams(temperature=(1.0 + 7.0 * value) / 5.0, seed=seed)
