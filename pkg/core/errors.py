class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class ConfigError(SimulationError, ValueError):
    """Invalid configuration; the message names the offending key or field."""

    def __init__(self, message: str, key: str = None):
        super().__init__(message)
        self.key = key


class AmbiguityError(SimulationError):
    """Propagation delay reaches the ramp or symbol duration."""


class SingularityError(SimulationError):
    """Speed estimate makes the distance inversion singular (1 - 2v/c <= 0)."""


class SignalError(SimulationError, ValueError):
    """Malformed sample buffer: empty, all-zero, or mismatched length/rate."""
