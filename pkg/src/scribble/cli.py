"""Command-line access to every engine capability.

Subcommands map 1:1 onto the service operations and share the same engine
path, so a CLI export is byte-identical to the HTTP export for the same
operation sequence. Ids and status notes go to stderr; script text, exports,
and ``--json`` payloads go to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .backends import BackendError, backend_from_env
from .domain import (
    ScribbleError,
    validate_dialogue_config,
    validate_monologue_config,
)
from .engine import (
    AbstractEmpty,
    continue_session,
    create_dialogue_session,
    create_monologue,
    export_monologue,
    export_session,
    finalize_session,
    swap_emotion,
)
from .screenplay import emit_screenplay
from .serialize import monologue_to_dict, session_to_dict
from .store import DirectoryStore


class _ArgumentParser(argparse.ArgumentParser):
    """Exits 1 on usage errors so exit code 2 stays reserved for backend
    failures."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--store",
        type=Path,
        default=Path(os.environ.get("TLP_STORE", "scribble-store")),
        help="directory holding per-session JSON files (default: ./scribble-store)",
    )
    parser.add_argument(
        "--backend",
        choices=("mock", "http"),
        default=None,
        help="generation backend (default: TLP_BACKEND or mock)",
    )
    parser.add_argument("--seed", type=int, default=None, help="mock backend seed")
    parser.add_argument(
        "--json", action="store_true", help="emit machine-readable JSON on stdout"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="scribble", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    dialogue = commands.add_parser("dialogue", help="dialogue session operations")
    dialogue_sub = dialogue.add_subparsers(dest="subcommand", required=True)

    new = dialogue_sub.add_parser("new", help="create a session from idea inputs")
    new.add_argument("--keywords", required=True, help="comma-separated topic words")
    new.add_argument("--genre", required=True)
    new.add_argument("--creativity", type=float, required=True)
    _add_common(new)
    new.set_defaults(handler=_dialogue_new)

    cont = dialogue_sub.add_parser("continue", help="inject a line or direction")
    cont.add_argument("id")
    cont.add_argument("text")
    _add_common(cont)
    cont.set_defaults(handler=_dialogue_continue)

    final = dialogue_sub.add_parser("finalize", help="reformat into a screenplay")
    final.add_argument("id")
    _add_common(final)
    final.set_defaults(handler=_dialogue_finalize)

    export = dialogue_sub.add_parser("export", help="write the bundled .txt")
    export.add_argument("id")
    export.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    _add_common(export)
    export.set_defaults(handler=_dialogue_export)

    monologue = commands.add_parser("monologue", help="monologue operations")
    monologue_sub = monologue.add_subparsers(dest="subcommand", required=True)

    mono_new = monologue_sub.add_parser("new", help="generate a monologue")
    mono_new.add_argument("--sentence", required=True, help="the main context sentence")
    mono_new.add_argument("--emotions", required=True)
    mono_new.add_argument("--creativity", type=float, required=True)
    _add_common(mono_new)
    mono_new.set_defaults(handler=_monologue_new)

    swap = monologue_sub.add_parser(
        "swap", help="same lines, different emotion label"
    )
    swap.add_argument("id")
    swap.add_argument("emotion")
    _add_common(swap)
    swap.set_defaults(handler=_monologue_swap)

    mono_export = monologue_sub.add_parser("export", help="write the bundled .txt")
    mono_export.add_argument("id")
    mono_export.add_argument("--out", type=Path, default=None)
    _add_common(mono_export)
    mono_export.set_defaults(handler=_monologue_export)

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument(
        "--port", type=int, default=int(os.environ.get("TLP_PORT", "8080"))
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--backend", choices=("mock", "http"), default=None)
    serve.add_argument(
        "--snapshot-path",
        type=Path,
        default=os.environ.get("TLP_SNAPSHOT"),
        help="JSON snapshot file for crash recovery",
    )
    serve.add_argument("--seed", type=int, default=None)
    serve.set_defaults(handler=_serve)

    return parser


def _backend(args) -> object:
    return backend_from_env(args.backend, args.seed)


def _dialogue_new(args) -> int:
    config = validate_dialogue_config(args.keywords, args.genre, args.creativity)
    session = create_dialogue_session(config, _backend(args), args.seed)
    DirectoryStore(args.store).put(session)
    if args.json:
        print(json.dumps(session_to_dict(session), indent=2))
    else:
        print(f"session {session.id}", file=sys.stderr)
        print(session.transcript[0].text)
    return 0


def _dialogue_continue(args) -> int:
    store = DirectoryStore(args.store)
    session = continue_session(
        store.get_session(args.id), args.text, _backend(args), args.seed
    )
    store.put(session)
    if args.json:
        print(json.dumps(session_to_dict(session), indent=2))
    else:
        print(session.transcript[-1].text)
    return 0


def _dialogue_finalize(args) -> int:
    store = DirectoryStore(args.store)
    session = finalize_session(store.get_session(args.id))
    store.put(session)
    if args.json:
        payload = session_to_dict(session)
        payload["screenplay_text"] = emit_screenplay(session.final_document)
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(emit_screenplay(session.final_document))
    return 0


def _write_export(args, body: bytes) -> int:
    if args.out is not None:
        args.out.write_bytes(body)
        print(f"wrote {args.out}", file=sys.stderr)
    elif args.json:
        print(json.dumps({"export": body.decode("utf-8")}))
    else:
        sys.stdout.write(body.decode("utf-8"))
    return 0


def _dialogue_export(args) -> int:
    session = DirectoryStore(args.store).get_session(args.id)
    return _write_export(args, export_session(session))


def _monologue_new(args) -> int:
    config = validate_monologue_config(args.sentence, args.emotions, args.creativity)
    monologue = create_monologue(config, _backend(args), args.seed)
    DirectoryStore(args.store).put(monologue)
    if args.json:
        print(json.dumps(monologue_to_dict(monologue), indent=2))
    else:
        print(f"monologue {monologue.id}", file=sys.stderr)
        print(monologue.text)
    return 0


def _monologue_swap(args) -> int:
    store = DirectoryStore(args.store)
    swapped = swap_emotion(store.get_monologue(args.id), args.emotion)
    store.put(swapped)
    if args.json:
        print(json.dumps(monologue_to_dict(swapped), indent=2))
    else:
        print(f"monologue {swapped.id} (from {swapped.source_id})", file=sys.stderr)
        print(swapped.text)
    return 0


def _monologue_export(args) -> int:
    monologue = DirectoryStore(args.store).get_monologue(args.id)
    return _write_export(args, export_monologue(monologue))


def _serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .store import SessionStore

    store = SessionStore(args.snapshot_path)
    app = create_app(store, backend_from_env(args.backend, args.seed))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ScribbleError as error:
        print(f"error[{error.code}]: {error}", file=sys.stderr)
        if isinstance(error, (BackendError, AbstractEmpty)):
            return 2
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
