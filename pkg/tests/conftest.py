"""Shared test doubles and generators."""

from __future__ import annotations

import random

from scribble.backends import GenerationRequest, GenerationResponse, MockBackend
from scribble.screenplay import Action, Cue, SceneHeading, ScreenplayDocument


class RecordingBackend:
    """Delegates to an inner backend and keeps every request it saw."""

    def __init__(self, inner=None):
        self.inner = inner if inner is not None else MockBackend(seed=0)
        self.requests: list[GenerationRequest] = []

    @property
    def backend_id(self) -> str:
        return self.inner.backend_id

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        self.requests.append(request)
        return self.inner.generate(request)


class FlakyBackend:
    """Raises a prepared error on chosen call numbers (1-based), otherwise
    delegates to the inner backend."""

    backend_id = "flaky"

    def __init__(self, inner=None, fail_on=(), error=None):
        self.inner = inner if inner is not None else MockBackend(seed=0)
        self.fail_on = set(fail_on)
        self.error = error
        self.calls = 0

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        self.calls += 1
        if self.calls in self.fail_on or not self.fail_on and self.error is not None:
            raise self.error
        return self.inner.generate(request)


_NAMES = (
    "Sara",
    "MIRA",
    "Old Man Jenkins",
    "O'Brien",
    "Jo",
    "Anna Marie",
    "the caretaker",
)
_PARENTHETICALS = (None, None, "whispering", "beat", "to herself", "off stage")
_WORDS = (
    "the", "orange", "summer", "night", "door", "quietly", "again", "nobody",
    "waits", "remembers", "dragon", "stage", "lantern", "rain", "it's",
    "never", "always", "home", "tide", "whisper",
)
_PUNCT = ("", "", ".", ",", "?", "!")
_PLACES = ("KITCHEN", "HARBOR", "BACKSTAGE", "GREENHOUSE", "TRAIN CAR")
_TIMES = ("NIGHT", "DAY", "DUSK", "LATER")


def random_sentence(rng: random.Random, min_words=2, max_words=10) -> str:
    words = [rng.choice(_WORDS) for _ in range(rng.randint(min_words, max_words))]
    return " ".join(words) + rng.choice(_PUNCT)


def random_document(rng: random.Random, max_elements: int = 8) -> ScreenplayDocument:
    """A document from the emitter's unambiguous value space.

    Action text never starts with a scene-heading prefix, a section header,
    or a short speaker-like head before a colon; for those inputs the line
    grammar deliberately prefers the structural reading, so they cannot
    round-trip as actions.
    """
    elements = []
    for _ in range(rng.randint(0, max_elements)):
        kind = rng.choice(("heading", "action", "cue", "cue"))
        if kind == "heading":
            prefix = rng.choice(("INT.", "EXT.", "INT/EXT"))
            elements.append(
                SceneHeading(f"{prefix} {rng.choice(_PLACES)} - {rng.choice(_TIMES)}")
            )
        elif kind == "action":
            text = random_sentence(rng)
            if rng.random() < 0.3:
                # mid-sentence colons are fine after a long head
                text += " and then some: " + random_sentence(rng, 1, 4)
            elements.append(Action(text))
        else:
            dialogue = random_sentence(rng)
            if rng.random() < 0.2:
                dialogue += " like: " + random_sentence(rng, 1, 3)
            elements.append(
                Cue(rng.choice(_NAMES), rng.choice(_PARENTHETICALS), dialogue)
            )
    return ScreenplayDocument(tuple(elements))


_FUZZ_ALPHABET = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " \t\n\n\n:.()-!?'\",;[]{}/\\|=+*&^%$#@~`—–éü世界\U0001f3ad"
)


def random_fuzz_text(rng: random.Random, max_len: int = 400) -> str:
    return "".join(rng.choice(_FUZZ_ALPHABET) for _ in range(rng.randint(0, max_len)))
