"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Runs entirely offline against the mock backend.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from conftest import FlakyBackend, RecordingBackend, random_document, random_fuzz_text
from scribble.backends import MockBackend, NetworkError
from scribble.domain import (
    UserDirection,
    UserLine,
    creativity_to_sampling,
    validate_dialogue_config,
    validate_monologue_config,
)
from scribble.engine import (
    NotFinalized,
    SessionFinalized,
    SessionState,
    classify_injection,
    continue_session,
    create_dialogue_session,
    create_monologue,
    export_session,
    finalize_session,
    swap_emotion,
)
from scribble.screenplay import emit_screenplay, parse_raw_script
from scribble.service import create_app
from scribble.store import SessionStore

GOLDEN = Path(__file__).parent / "golden"


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"FAIL {name}")
        raise
    print(f"PASS {name}")


def test_dialogue_interaction_flow_conformance():
    with criterion("interaction-flow conformance (dialogue)"):
        started = time.monotonic()
        backend = MockBackend(seed=7)
        config = validate_dialogue_config("orange, summer, iPhone", "Horror", 0.7)
        session = create_dialogue_session(config, backend, seed=7)
        session = continue_session(session, "Sara: I want to go home", backend, seed=7)
        session = continue_session(session, "Introduce a dragon", backend, seed=7)
        session = continue_session(
            session,
            "The girl named 'Jessica' comes and try to talk to the people",
            backend,
            seed=7,
        )
        session = finalize_session(session)
        export = export_session(session)
        elapsed = time.monotonic() - started

        assert len(session.transcript) == 7
        assert session.state is SessionState.FINALIZED
        assert export == (GOLDEN / "dialogue_flow.txt").read_bytes()
        assert elapsed < 1.0


def test_monologue_interaction_flow_conformance():
    with criterion("interaction-flow conformance (monologue)"):
        started = time.monotonic()
        backend = MockBackend(seed=7)
        config = validate_monologue_config(
            "Emily regrets that she dropped the school", "depressed", 0.3
        )
        monologue = create_monologue(config, backend, seed=7)
        from scribble.engine import export_monologue

        export = export_monologue(monologue)
        elapsed = time.monotonic() - started

        assert monologue.emotion_label == "depressed"
        assert export == (GOLDEN / "monologue_flow.txt").read_bytes()
        assert elapsed < 1.0


def test_state_machine_property_suite():
    with criterion("state-machine property suite (1000 sequences)"):
        started = time.monotonic()
        rng = random.Random(1234)
        backend = MockBackend(seed=0)
        config = validate_dialogue_config("tea, rain", "Drama", 0.0)
        base = create_dialogue_session(config, backend, seed=0)

        divergences = 0
        for _ in range(1000):
            session = base
            expected_state = "drafting"
            expected_length = 1
            for step in range(rng.randint(1, 8)):
                op = rng.choice(("continue", "finalize", "export"))
                if op == "continue":
                    allowed = expected_state == "drafting"
                    try:
                        session = continue_session(session, f"Sara: step {step}", backend)
                        outcome = "ok"
                    except SessionFinalized:
                        outcome = "rejected"
                    if allowed:
                        expected_length += 2
                    if (outcome == "ok") != allowed:
                        divergences += 1
                elif op == "finalize":
                    allowed = expected_state == "drafting"
                    try:
                        session = finalize_session(session)
                        outcome = "ok"
                    except SessionFinalized:
                        outcome = "rejected"
                    if allowed:
                        expected_state = "finalized"
                    if (outcome == "ok") != allowed:
                        divergences += 1
                else:
                    allowed = expected_state == "finalized"
                    try:
                        body = export_session(session)
                        outcome = "ok"
                        assert body.startswith(b"SCRIBBLE EXPORT v1")
                    except NotFinalized:
                        outcome = "rejected"
                    if (outcome == "ok") != allowed:
                        divergences += 1
                if session.state.value != expected_state:
                    divergences += 1
                if len(session.transcript) != expected_length:
                    divergences += 1
        elapsed = time.monotonic() - started

        assert divergences == 0
        assert elapsed < 5.0


def test_anchor_invariance():
    with criterion("anchor invariance (20 sessions x 5 continuations)"):
        rng = random.Random(99)
        genres = ("Horror", "Romance", "Sci-fi", "Comedy")
        words = ("orange", "summer", "iPhone", "chair", "cloud", "Napoleon", "tide")
        checked = 0
        for index in range(20):
            backend = RecordingBackend(MockBackend(seed=index))
            keywords = ", ".join(rng.sample(words, rng.randint(1, 4)))
            config = validate_dialogue_config(keywords, rng.choice(genres), rng.random())
            session = create_dialogue_session(config, backend, seed=index)
            for step in range(5):
                session = continue_session(
                    session, f"Sara: continuation {step}", backend, seed=index
                )
            post_creation = backend.requests[1:]
            assert len(post_creation) == 6
            for request in post_creation:
                assert session.anchor.abstract_text in request.system_prompt
                checked += 1
        assert checked == 120


def test_determinism_at_zero_creativity():
    with criterion("determinism at creativity 0 (10 identical exports)"):
        def flow() -> bytes:
            backend = MockBackend(seed=11)
            config = validate_dialogue_config("orange, summer, iPhone", "Horror", 0.0)
            session = create_dialogue_session(config, backend, seed=11)
            for text in ("Sara: I want to go home", "Introduce a dragon", "Mira: wait"):
                session = continue_session(session, text, backend, seed=11)
            return export_session(finalize_session(session))

        exports = {flow() for _ in range(10)}
        assert len(exports) == 1


def test_formatter_properties():
    with criterion("formatter: parse totality (1000) + emit/parse idempotence (500)"):
        rng = random.Random(31337)
        for _ in range(1000):
            parse_raw_script(random_fuzz_text(rng))
        failures = 0
        for _ in range(500):
            doc = random_document(rng)
            emitted = emit_screenplay(doc)
            reparsed = parse_raw_script(emitted)
            if reparsed != doc or emit_screenplay(reparsed) != emitted:
                failures += 1
        assert failures == 0


# Hand-labeled per the classification rule: a leading segment before the
# first colon with at most 3 words, each starting with a letter, at most 30
# characters, and no periods or dashes reads as a speaker; everything else
# is a direction.
CLASSIFIER_CASES = [
    ("Sara: I want to go home", "line", "Sara"),
    ("The girl named 'Jessica' comes and try to talk to the people", "direction", None),
    ("INT. HOUSE - NIGHT: all quiet", "direction", None),
    ("Introduce a dragon", "direction", None),
    ("Old Man Jenkins: get off my lawn", "line", "Old Man Jenkins"),
    ("Very Old Man Jenkins: hello", "direction", None),
    ("O'Brien: aye", "line", "O'Brien"),
    ("Dr. Smith: hello there", "direction", None),
    ("Jean-Luc: engage", "direction", None),
    ("sara: whispering now", "line", "sara"),
    ("A very long name that goes past the cap: text", "direction", None),
    (": hello", "direction", None),
    ("Sara:", "direction", None),
    ("Sara : spaced colon", "line", "Sara"),
    ("MIRA: (whispering) it's here", "line", "MIRA"),
    ("Note to self: remember the props", "line", "Note to self"),
    ("He runs away quickly", "direction", None),
    ("Anna Marie: wait for me", "line", "Anna Marie"),
    ("12th Doctor: run", "direction", None),
    ("Sara: I want: to go", "line", "Sara"),
]


def test_injection_classifier_fixture():
    with criterion("injection classifier fixture (20 hand-labeled cases)"):
        assert len(CLASSIFIER_CASES) == 20
        for text, expected_kind, expected_speaker in CLASSIFIER_CASES:
            event = classify_injection(text)
            if expected_kind == "line":
                assert isinstance(event, UserLine), text
                assert event.speaker == expected_speaker, text
            else:
                assert isinstance(event, UserDirection), text


def test_temperature_mapping_grid():
    with criterion("temperature mapping: 101-point monotonicity, exact endpoints"):
        grid = [i / 100 for i in range(101)]
        temperatures = [creativity_to_sampling(value).temperature for value in grid]
        assert all(a <= b for a, b in zip(temperatures, temperatures[1:]))
        assert temperatures[0] == 0.2
        assert temperatures[-1] == 1.6


def test_http_contract_and_crash_recovery(tmp_path):
    with criterion("HTTP contract: all endpoints, 400/404/409/502, crash recovery"):
        snapshot = tmp_path / "snapshot.json"
        client = TestClient(create_app(SessionStore(snapshot), MockBackend(seed=7)))
        down = TestClient(
            create_app(SessionStore(), FlakyBackend(error=NetworkError("down")))
        )
        dialogue_body = {
            "keywords": "orange, summer, iPhone",
            "genre": "Horror",
            "creativity": 0.7,
        }
        monologue_body = {
            "sentence": "Emily regrets that she dropped the school",
            "emotions": "depressed",
            "creativity": 0.3,
        }

        # dialogue creation: 201 / 400 / 502
        created = client.post("/api/dialogues", json=dialogue_body)
        assert created.status_code == 201
        session_id = created.json()["id"]
        bad = client.post("/api/dialogues", json=dict(dialogue_body, keywords=""))
        assert bad.status_code == 400 and bad.json()["code"] == "EmptyKeyword"
        assert down.post("/api/dialogues", json=dialogue_body).status_code == 502

        # continue: 200 / 404 / 409 / 502 with unchanged transcript
        ok = client.post(
            f"/api/dialogues/{session_id}/continue",
            json={"text": "Sara: I want to go home"},
        )
        assert ok.status_code == 200 and len(ok.json()["transcript"]) == 3
        assert (
            client.post("/api/dialogues/missing/continue", json={"text": "x"}).status_code
            == 404
        )
        flaky = FlakyBackend(MockBackend(seed=7), fail_on={3}, error=NetworkError("x"))
        flaky_client = TestClient(create_app(SessionStore(), flaky))
        flaky_id = flaky_client.post("/api/dialogues", json=dialogue_body).json()["id"]
        failed = flaky_client.post(
            f"/api/dialogues/{flaky_id}/continue", json={"text": "Sara: hello"}
        )
        assert failed.status_code == 502
        assert len(flaky_client.get(f"/api/dialogues/{flaky_id}").json()["transcript"]) == 1

        # export gating before finalize: 409
        early = client.get(f"/api/dialogues/{session_id}/export")
        assert early.status_code == 409 and early.json()["code"] == "NotFinalized"

        # finalize: 200 / 404 / 409-on-repeat
        finalized = client.post(f"/api/dialogues/{session_id}/finalize")
        assert finalized.status_code == 200
        assert finalized.json()["state"] == "finalized"
        assert client.post("/api/dialogues/missing/finalize").status_code == 404
        assert client.post(f"/api/dialogues/{session_id}/finalize").status_code == 409
        conflicted = client.post(
            f"/api/dialogues/{session_id}/continue", json={"text": "Sara: more"}
        )
        assert conflicted.status_code == 409

        # dialogue export: 200 + headers / 404
        export = client.get(f"/api/dialogues/{session_id}/export")
        assert export.status_code == 200
        assert export.text.startswith("SCRIBBLE EXPORT v1")
        assert created.json()["anchor"] in export.text
        assert export.headers["content-disposition"] == (
            f'attachment; filename="scribble-{session_id}.txt"'
        )
        assert client.get("/api/dialogues/missing/export").status_code == 404

        # monologues: 201 / 400 / 502, export immediately, swap-emotion
        monologue = client.post("/api/monologues", json=monologue_body)
        assert monologue.status_code == 201
        monologue_id = monologue.json()["id"]
        bad_monologue = client.post(
            "/api/monologues", json=dict(monologue_body, emotions="")
        )
        assert bad_monologue.status_code == 400
        assert bad_monologue.json()["code"] == "EmptyEmotion"
        assert down.post("/api/monologues", json=monologue_body).status_code == 502
        monologue_export = client.get(f"/api/monologues/{monologue_id}/export")
        assert monologue_export.status_code == 200
        assert "== EMOTION ==\ndepressed" in monologue_export.text
        assert client.get("/api/monologues/missing/export").status_code == 404
        swapped = client.post(
            f"/api/monologues/{monologue_id}/swap-emotion", json={"emotion": "elated"}
        )
        assert swapped.status_code == 200
        assert swapped.json()["text"] == monologue.json()["text"]
        assert swapped.json()["source_id"] == monologue_id
        assert (
            client.post("/api/monologues/missing/swap-emotion", json={"emotion": "x"}).status_code
            == 404
        )
        empty_swap = client.post(
            f"/api/monologues/{monologue_id}/swap-emotion", json={"emotion": ""}
        )
        assert empty_swap.status_code == 400

        # crash recovery: snapshot reload re-exports byte-identical files
        dialogue_bytes = export.content
        monologue_bytes = monologue_export.content
        reloaded = TestClient(create_app(SessionStore(snapshot), MockBackend(seed=7)))
        assert reloaded.get(f"/api/dialogues/{session_id}/export").content == dialogue_bytes
        assert (
            reloaded.get(f"/api/monologues/{monologue_id}/export").content
            == monologue_bytes
        )


def test_swap_emotion_byte_equality():
    with criterion("swap_emotion: byte equality over 100 random swap sequences"):
        rng = random.Random(2024)
        labels = ("happy", "sad", "furious", "calm", "sad but happy", "terrified")
        backend = MockBackend(seed=3)
        for index in range(100):
            config = validate_monologue_config(
                f"Sentence number {index}.", rng.choice(labels), rng.random()
            )
            original = create_monologue(config, backend, seed=index)
            current = original
            for _ in range(rng.randint(1, 10)):
                current = swap_emotion(current, rng.choice(labels))
                assert current.text == original.text
