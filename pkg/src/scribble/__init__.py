"""Interactive script generation for improv rehearsal.

Dialogue sessions anchored to a generated topic abstract, one-shot
monologues with an emotion-swap exercise, deterministic screenplay
formatting, .txt exports, and an HTTP service plus CLI on top.
"""

from .backends import (
    Backend,
    BackendError,
    EmptyCompletion,
    GenerationRequest,
    GenerationResponse,
    HttpBackend,
    MockBackend,
    NetworkError,
    ProviderError,
    Timeout,
    backend_from_env,
    mock_generate,
)
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
    ValidationError,
    creativity_to_sampling,
    validate_dialogue_config,
    validate_monologue_config,
)
from .engine import (
    AbstractEmpty,
    Monologue,
    NotFinalized,
    Session,
    SessionFinalized,
    SessionState,
    classify_injection,
    continue_session,
    create_dialogue_session,
    create_monologue,
    export_monologue,
    export_session,
    finalize_session,
    swap_emotion,
)
from .prompts import (
    PromptKind,
    PromptTemplates,
    build_abstract_request,
    build_continuation_request,
    build_initial_script_request,
    build_monologue_request,
)
from .screenplay import (
    Action,
    Cue,
    SceneHeading,
    ScreenplayDocument,
    emit_export,
    emit_screenplay,
    parse_raw_script,
)
from .service import app_from_env, create_app
from .store import DirectoryStore, NotFound, SessionStore

__all__ = [name for name in dir() if not name.startswith("_")]
