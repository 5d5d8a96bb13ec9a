"""Chat-model teacher: transports, prompt rendering, turn parsing, session loop."""

from teachsim.llm.parsing import (
    ParsedTurn,
    UnparseableAnswer,
    parse_mentions,
    parse_turn,
    parse_type_answer,
)
from teachsim.llm.prompts import (
    CHAT_CLASS_NAMES,
    KEEP_LEARNING,
    STOP_PREFIX,
    cannot_learn,
    chat_class,
    domain_class,
    fraction_system_prompt,
    function_system_prompt,
    type_query,
    verb_system_prompt,
)
from teachsim.llm.session import LlmTeacherSession, SessionOutcome, build_llm_session
from teachsim.llm.transport import (
    ChatMessage,
    ChatTransport,
    HttpChatTransport,
    RecordingTransport,
    ReplayTransport,
    StubTransport,
    TransportError,
)

__all__ = [
    "ChatMessage",
    "ChatTransport",
    "CHAT_CLASS_NAMES",
    "HttpChatTransport",
    "KEEP_LEARNING",
    "LlmTeacherSession",
    "ParsedTurn",
    "RecordingTransport",
    "ReplayTransport",
    "STOP_PREFIX",
    "SessionOutcome",
    "StubTransport",
    "TransportError",
    "UnparseableAnswer",
    "build_llm_session",
    "cannot_learn",
    "chat_class",
    "domain_class",
    "fraction_system_prompt",
    "function_system_prompt",
    "parse_mentions",
    "parse_turn",
    "parse_type_answer",
    "type_query",
    "verb_system_prompt",
]
