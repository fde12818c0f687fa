"""Append-only run trace and its TSV form."""

from typing import Iterable, List, Optional

from .models import PolicyId, TraceEvent, policy_label

TRACE_COLUMNS = ("step", "kind", "site", "policy_selected", "policy_final", "detail")


class TraceRecorder:
    """Collects trace events in emission order."""

    def __init__(self):
        self._events: List[TraceEvent] = []

    def record(
        self,
        step: int,
        kind: str,
        site: str,
        selected: Optional[PolicyId] = None,
        final: Optional[PolicyId] = None,
        detail: str = ""
    ) -> TraceEvent:
        event = TraceEvent(
            step=step, kind=kind, site=site,
            policy_selected=selected, policy_final=final, detail=detail
        )
        if self._events and event.step < self._events[-1].step:
            raise ValueError(f"trace event at step {event.step} after step {self._events[-1].step}")
        self._events.append(event)
        return event

    @property
    def events(self) -> List[TraceEvent]:
        return list(self._events)

    def __len__(self) -> int:
        return len(self._events)


def format_event(event: TraceEvent) -> str:
    """One tab-separated line, fields in TRACE_COLUMNS order."""
    return "\t".join([
        str(event.step),
        event.kind,
        event.site,
        policy_label(event.policy_selected),
        policy_label(event.policy_final),
        event.detail,
    ])


def emit_trace(events: Iterable[TraceEvent]) -> str:
    """
    Render a trace as TSV text, one line per event with a trailing newline.

    Args:
        events: Trace events in emission order

    Returns:
        TSV text (empty string for an empty trace)
    """
    return "".join(format_event(event) + "\n" for event in events)
