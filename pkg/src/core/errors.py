"""Simulation error types.

Each simulation-level error carries a stable ``reason`` string; the
rendezvous report copies it verbatim and the CLI maps it to exit code 4.
"""


class SimulationError(RuntimeError):
    """A run could not complete inside the model."""

    reason = "simulation error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.reason)


class GraphDisconnectedError(SimulationError):
    reason = "graph disconnected"


class NoCandidatesError(SimulationError):
    reason = "no candidates"


class EmptyPointSetError(ValueError):
    def __init__(self, message: str = "empty point set"):
        super().__init__(message)


class DensityLawError(ValueError):
    """Malformed density-law expression."""
