"""Screenplay parsing, plaintext emission, and the .txt export bundle.

The parser is total: any string yields a document, with unrecognized text
degrading to action paragraphs. The emitter produces a normal form that the
parser maps back onto an equal document, so emit(parse(emit(d))) == emit(d)
for every document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .domain import DialogueConfig, MonologueConfig

EXPORT_HEADER = "SCRIBBLE EXPORT v1"

SPEAKER_MAX_WORDS = 3
SPEAKER_MAX_LEN = 30
_SPEAKER_FORBIDDEN = (".", "-", "–", "—")

_SCENE_HEADING_RE = re.compile(r"^(INT\.|EXT\.|INT/EXT)", re.IGNORECASE)
_SECTION_HEADER_RE = re.compile(r"^(SUMMARY|SCRIPT):", re.IGNORECASE)
_PARENTHETICAL_LINE_RE = re.compile(r"^\(([^()]*)\)$")
_LEADING_PARENTHETICAL_RE = re.compile(r"^\(([^()]*)\)\s*(.+)$", re.DOTALL)


def is_speaker_name(segment: str) -> bool:
    """Whether text reads as a character name rather than prose.

    At most three whitespace-separated words, each starting with a letter,
    30 characters total, and no sentence punctuation (periods or dashes;
    apostrophes are fine).
    """
    name = segment.strip()
    if not name or len(name) > SPEAKER_MAX_LEN:
        return False
    if any(ch in name for ch in _SPEAKER_FORBIDDEN):
        return False
    words = name.split()
    if len(words) > SPEAKER_MAX_WORDS:
        return False
    return all(word[0].isalpha() for word in words)


def _normal(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class SceneHeading:
    text: str

    def __post_init__(self):
        object.__setattr__(self, "text", _normal(self.text).upper())
        if not self.text:
            raise ValueError("scene heading text must be nonempty")


@dataclass(frozen=True)
class Action:
    text: str

    def __post_init__(self):
        object.__setattr__(self, "text", _normal(self.text))
        if not self.text:
            raise ValueError("action text must be nonempty")


@dataclass(frozen=True)
class Cue:
    character: str
    parenthetical: str | None
    dialogue: str

    def __post_init__(self):
        object.__setattr__(self, "character", _normal(self.character).upper())
        if not self.character:
            raise ValueError("cue character must be nonempty")
        paren = _normal(self.parenthetical) if self.parenthetical else ""
        object.__setattr__(self, "parenthetical", paren or None)
        object.__setattr__(self, "dialogue", _normal(self.dialogue))
        if not self.dialogue:
            raise ValueError("cue dialogue must be nonempty")


Element = SceneHeading | Action | Cue


@dataclass(frozen=True)
class ScreenplayDocument:
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))


def _split_colon_cue(line: str) -> Cue | None:
    head, sep, rest = line.partition(":")
    if not sep or not is_speaker_name(head):
        return None
    dialogue = rest.strip()
    if not dialogue:
        return None
    lifted = _LEADING_PARENTHETICAL_RE.match(dialogue)
    if lifted:
        return Cue(head, lifted.group(1), lifted.group(2))
    return Cue(head, None, dialogue)


def _is_block_cue_start(lines: list[str], index: int) -> bool:
    line = lines[index]
    return (
        line.isupper()
        and ":" not in line
        and is_speaker_name(line)
        and index + 1 < len(lines)
        and bool(lines[index + 1])
    )


def _parse_block_cue(lines: list[str], index: int) -> tuple[Cue, int]:
    """Parse an emitted-form cue: uppercase name line, optional
    (parenthetical) line, then dialogue lines up to the next blank line.
    Returns the cue and the index just past it."""
    name = lines[index]
    cursor = index + 1
    parenthetical = None
    match = _PARENTHETICAL_LINE_RE.match(lines[cursor])
    if match and cursor + 1 < len(lines) and lines[cursor + 1]:
        parenthetical = match.group(1)
        cursor += 1
    dialogue: list[str] = []
    while cursor < len(lines) and lines[cursor]:
        dialogue.append(lines[cursor])
        cursor += 1
    return Cue(name, parenthetical, " ".join(dialogue)), cursor


def parse_raw_script(text: str) -> ScreenplayDocument:
    """Total line-oriented parse of arbitrary generated text.

    Per trimmed line: scene headings (INT./EXT./INT/EXT prefixes), dropped
    SUMMARY:/SCRIPT: section headers, "NAME: dialogue" cues (with a leading
    parenthetical lifted out), emitted-form cue blocks, and everything else
    as action text; consecutive action lines merge into one paragraph and
    blank lines end the merge.
    """
    lines = [line.strip() for line in text.replace("\r\n", "\n").replace("\r", "\n").split("\n")]
    elements: list[Element] = []
    action_run: list[str] = []

    def flush():
        if action_run:
            elements.append(Action(" ".join(action_run)))
            action_run.clear()

    index = 0
    while index < len(lines):
        line = lines[index]
        if not line:
            flush()
            index += 1
            continue
        if _SCENE_HEADING_RE.match(line):
            flush()
            elements.append(SceneHeading(line))
            index += 1
            continue
        if _SECTION_HEADER_RE.match(line):
            index += 1
            continue
        cue = _split_colon_cue(line)
        if cue is not None:
            flush()
            elements.append(cue)
            index += 1
            continue
        if _is_block_cue_start(lines, index):
            flush()
            block, index = _parse_block_cue(lines, index)
            elements.append(block)
            continue
        action_run.append(line)
        index += 1
    flush()
    return ScreenplayDocument(tuple(elements))


def emit_screenplay(doc: ScreenplayDocument) -> str:
    """Deterministic plaintext: uppercase cue names on their own line,
    one blank line between elements, trailing newline."""
    blocks: list[str] = []
    for element in doc.elements:
        if isinstance(element, Cue):
            lines = [element.character]
            if element.parenthetical:
                lines.append(f"({element.parenthetical})")
            lines.append(element.dialogue)
            blocks.append("\n".join(lines))
        else:
            blocks.append(element.text)
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"


def emit_export(
    config: DialogueConfig | MonologueConfig,
    anchor_or_emotion: str,
    doc_or_text: ScreenplayDocument | str,
) -> bytes:
    """Render the bundled .txt export (UTF-8, LF newlines, exact layout).

    Dialogue exports carry the inputs, the topic anchor under SUMMARY, and
    the emitted screenplay; monologue exports carry the inputs, the current
    emotion label under EMOTION, and the monologue text.
    """
    lines = [EXPORT_HEADER, "", "== INPUTS =="]
    if isinstance(config, DialogueConfig):
        lines.append(f"keywords: {', '.join(config.keywords)}")
        lines.append(f"genre: {config.genre}")
        middle_header = "== SUMMARY =="
    else:
        lines.append(f"sentence: {config.sentence}")
        lines.append(f"emotions: {config.emotions}")
        middle_header = "== EMOTION =="
    lines.append(f"creativity: {config.creativity:.2f}")
    lines += ["", middle_header, anchor_or_emotion, "", "== SCRIPT =="]
    head = "\n".join(lines) + "\n"
    if isinstance(doc_or_text, ScreenplayDocument):
        script = emit_screenplay(doc_or_text)
    else:
        script = doc_or_text if doc_or_text.endswith("\n") else doc_or_text + "\n"
    return (head + script).encode("utf-8")
