"""JSON-dict conversion for sessions, monologues, and screenplay documents.

One schema shared by the HTTP API, the service snapshot file, and the CLI's
per-session files, so an export after any round trip is byte-identical.
"""

from __future__ import annotations

from datetime import datetime

from .domain import (
    DialogueConfig,
    Generated,
    MonologueConfig,
    ScriptEvent,
    TopicAnchor,
    UserDirection,
    UserLine,
)
from .engine import Monologue, Session, SessionState
from .screenplay import Action, Cue, Element, SceneHeading, ScreenplayDocument


def event_to_dict(event: ScriptEvent) -> dict:
    if isinstance(event, Generated):
        return {"kind": "generated", "text": event.text}
    if isinstance(event, UserLine):
        return {"kind": "user_line", "speaker": event.speaker, "text": event.text}
    return {"kind": "user_direction", "text": event.text}


def event_from_dict(data: dict) -> ScriptEvent:
    kind = data["kind"]
    if kind == "generated":
        return Generated(text=data["text"])
    if kind == "user_line":
        return UserLine(speaker=data["speaker"], text=data["text"])
    if kind == "user_direction":
        return UserDirection(text=data["text"])
    raise ValueError(f"unknown event kind: {kind!r}")


def element_to_dict(element: Element) -> dict:
    if isinstance(element, SceneHeading):
        return {"kind": "scene_heading", "text": element.text}
    if isinstance(element, Action):
        return {"kind": "action", "text": element.text}
    return {
        "kind": "cue",
        "character": element.character,
        "parenthetical": element.parenthetical,
        "dialogue": element.dialogue,
    }


def element_from_dict(data: dict) -> Element:
    kind = data["kind"]
    if kind == "scene_heading":
        return SceneHeading(text=data["text"])
    if kind == "action":
        return Action(text=data["text"])
    if kind == "cue":
        return Cue(
            character=data["character"],
            parenthetical=data.get("parenthetical"),
            dialogue=data["dialogue"],
        )
    raise ValueError(f"unknown element kind: {kind!r}")


def document_to_dict(doc: ScreenplayDocument) -> dict:
    return {"elements": [element_to_dict(element) for element in doc.elements]}


def document_from_dict(data: dict) -> ScreenplayDocument:
    return ScreenplayDocument(
        elements=tuple(element_from_dict(item) for item in data["elements"])
    )


def session_to_dict(session: Session) -> dict:
    return {
        "kind": "dialogue",
        "id": session.id,
        "created_at": session.created_at.isoformat(),
        "state": session.state.value,
        "config": {
            "keywords": list(session.config.keywords),
            "genre": session.config.genre,
            "creativity": session.config.creativity,
        },
        "anchor": session.anchor.abstract_text,
        "transcript": [event_to_dict(event) for event in session.transcript],
        "final_document": (
            document_to_dict(session.final_document)
            if session.final_document is not None
            else None
        ),
    }


def session_from_dict(data: dict) -> Session:
    config = DialogueConfig(
        keywords=tuple(data["config"]["keywords"]),
        genre=data["config"]["genre"],
        creativity=data["config"]["creativity"],
    )
    return Session(
        id=data["id"],
        config=config,
        anchor=TopicAnchor(abstract_text=data["anchor"]),
        transcript=tuple(event_from_dict(item) for item in data["transcript"]),
        state=SessionState(data["state"]),
        final_document=(
            document_from_dict(data["final_document"])
            if data["final_document"] is not None
            else None
        ),
        created_at=datetime.fromisoformat(data["created_at"]),
    )


def monologue_to_dict(monologue: Monologue) -> dict:
    return {
        "kind": "monologue",
        "id": monologue.id,
        "config": {
            "sentence": monologue.config.sentence,
            "emotions": monologue.config.emotions,
            "creativity": monologue.config.creativity,
        },
        "text": monologue.text,
        "emotion_label": monologue.emotion_label,
        "source_id": monologue.source_id,
    }


def monologue_from_dict(data: dict) -> Monologue:
    config = MonologueConfig(
        sentence=data["config"]["sentence"],
        emotions=data["config"]["emotions"],
        creativity=data["config"]["creativity"],
    )
    return Monologue(
        id=data["id"],
        config=config,
        text=data["text"],
        emotion_label=data["emotion_label"],
        source_id=data.get("source_id"),
    )


def item_to_dict(item: Session | Monologue) -> dict:
    return session_to_dict(item) if isinstance(item, Session) else monologue_to_dict(item)


def item_from_dict(data: dict) -> Session | Monologue:
    if data["kind"] == "dialogue":
        return session_from_dict(data)
    if data["kind"] == "monologue":
        return monologue_from_dict(data)
    raise ValueError(f"unknown item kind: {data['kind']!r}")
