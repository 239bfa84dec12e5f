class PursuitError(Exception):
    """Base class for every error raised by the pursuit engine."""


# Geometry
class DimensionMismatch(PursuitError, ValueError):
    pass


class XTooCloseToCenter(PursuitError):
    pass


class XTooCloseToBoundary(PursuitError):
    pass


class AbovePerpendicular(PursuitError):
    """The robber sits above the cop's level; the cop should have captured."""


class NoPerpendicular(PursuitError):
    pass


# Graphs
class PointOutsideCube(PursuitError, ValueError):
    pass


# Strategies
class StrategyViolation(PursuitError):
    pass


class GainViolation(StrategyViolation):
    pass


class SeparationViolation(StrategyViolation):
    pass


class MoveTooLong(StrategyViolation):
    pass


class NoValidPlacement(PursuitError):
    pass


class BothDirectionsExitCube(PursuitError):
    pass


class EmptyRegion(PursuitError):
    pass


# Verification
class DisconnectedInput(PursuitError, ValueError):
    pass


class CoverTooLarge(PursuitError):
    pass


# Harness
class InsufficientData(PursuitError):
    pass


def describe(error):
    """Render an error as the reason string stored in fault traces."""
    message = str(error)
    name = type(error).__name__
    return f"{name}: {message}" if message else name
