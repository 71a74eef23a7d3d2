"""Calendar-holding negotiation agents."""

from .agent import COMMIT, REQUEST_NEXT, REQUEST_REPAIR, Agent
from .calendar import Calendar, CalendarError, Entry, FixWithoutReservation, ReserveConflict, format_clock, parse_clock
from .negotiation import (
    ADMISSIBLE,
    INITIATOR,
    PARTICIPANT,
    PHASES,
    NegotiationState,
    ProtocolViolation,
    StrategyConfig,
)

__all__ = [
    "ADMISSIBLE",
    "Agent",
    "COMMIT",
    "Calendar",
    "CalendarError",
    "Entry",
    "FixWithoutReservation",
    "INITIATOR",
    "NegotiationState",
    "PARTICIPANT",
    "PHASES",
    "ProtocolViolation",
    "REQUEST_NEXT",
    "REQUEST_REPAIR",
    "ReserveConflict",
    "StrategyConfig",
    "format_clock",
    "parse_clock",
]
