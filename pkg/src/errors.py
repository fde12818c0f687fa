"""Exception types raised by the autonomy simulator."""

from typing import Optional


class AutonomySimError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(AutonomySimError, ValueError):
    """A scenario, policy set or call argument is invalid."""


class ScenarioSyntaxError(ConfigurationError):
    """A scenario file line could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PlanningError(AutonomySimError):
    """A navigation policy could not produce a hop."""


class SimulationInternalError(AutonomySimError, RuntimeError):
    """An internal invariant of a run was breached."""
