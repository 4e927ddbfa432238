"""
Exception hierarchy shared by every service.

Everything a caller can provoke with bad input derives from AnalysisError
(itself a ValueError, so plain `except ValueError` keeps working).
CertificateViolation is different: it means a certificate failed its own
self-check, which only happens when a contractual precondition (continuity,
differentiability) was broken or there is a bug.
"""


class AnalysisError(ValueError):
    """Base class for all user-facing analysis errors."""


class CertificateViolation(AssertionError):
    """A produced certificate failed one of its invariants."""


# --- Functions and intervals ---

class InvalidInterval(AnalysisError):
    pass


class UnknownName(AnalysisError):
    pass


class BadArity(AnalysisError):
    pass


class BadParameter(AnalysisError):
    pass


class DomainViolation(AnalysisError):
    pass


class MissingDerivOracle(AnalysisError):
    pass


class ExactModeUnsupported(AnalysisError):
    pass


# --- Expressions ---

class ExprSyntaxError(AnalysisError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(AnalysisError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"Unknown identifier '{name}' (at offset {offset})")
        self.name = name
        self.offset = offset


class DifferentiateAbs(AnalysisError):
    pass


# --- Slopes ---

class EqualPoints(AnalysisError):
    pass


class OrderingViolated(AnalysisError):
    pass


# --- Witnesses ---

class EqualEndpointValues(AnalysisError):
    pass


class WrongOrientation(AnalysisError):
    pass


class StepFloorReached(AnalysisError):
    def __init__(self, t, min_step):
        super().__init__(f"No admissible step at t={t} above resolution {min_step}")
        self.t = t
        self.min_step = min_step


class EndpointsNotEqual(AnalysisError):
    pass


class NoInteriorExtremum(AnalysisError):
    pass


class TargetNotBracketed(AnalysisError):
    pass


# --- Inequalities ---

class NegativeK(AnalysisError):
    pass


class BadBounds(AnalysisError):
    pass


class DomainMismatch(AnalysisError):
    pass


# --- Cantor staircase ---

class LevelTooDeep(AnalysisError):
    pass


class OutOfUnitInterval(AnalysisError):
    pass


class TolTooSmall(AnalysisError):
    pass


# --- Polynomial operator / theorem graph / CLI ---

class DegreeExceedsSpace(AnalysisError):
    pass


class UnknownStatement(AnalysisError):
    pass


class UsageError(AnalysisError):
    def __init__(self, message: str, flag: str = None):
        super().__init__(f"{flag}: {message}" if flag else message)
        self.flag = flag
