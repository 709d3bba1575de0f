import logging
from dataclasses import dataclass, field
from typing import Any, Literal, Mapping

logger = logging.getLogger(__name__)

# Diagnostics (not results)

DiagnosticKind = Literal[
    "provider_unavailable",
    "walk_truncated",
    "entries_skipped",
    "degraded_connection",
    "snapshot_skipped",
]


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """
    A non-fatal condition that may affect the completeness of a result.

    Examples:
    - the files walk stopped at its entry cap
    - entries were skipped because they were not readable
    - one universal-relation connection contributed nothing because its provider is unavailable
    """
    kind: DiagnosticKind
    message: str
    details: Mapping[str, Any] = field(default_factory=dict)

    def render(self) -> str:
        return f"warning: {self.message}"

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "message": self.message, "details": dict(self.details)}


class DiagnosticSink:
    """
    Collects diagnostics for one query execution. Not shared between executions.
    """

    def __init__(self) -> None:
        self._items: list[Diagnostic] = []

    def warn(self, kind: DiagnosticKind, message: str, **details: Any) -> None:
        logger.debug("%s: %s %s", kind, message, details or "")
        self._items.append(Diagnostic(kind=kind, message=message, details=details))

    @property
    def items(self) -> tuple[Diagnostic, ...]:
        return tuple(self._items)

    def __len__(self) -> int:
        return len(self._items)
