"""Exception hierarchy shared by all modules."""


class HamTetraError(Exception):
    """Base class for every error raised by this package."""


class GeneralPositionViolation(HamTetraError, ValueError):
    """Four points are coplanar (or otherwise degenerate) where a strict test was required."""


class TooFewPoints(HamTetraError, ValueError):
    pass


class FaceInconsistency(HamTetraError):
    """A triangle is claimed by more than two tetrahedra."""


class NonClosingTrace(HamTetraError):
    """The rotation system does not describe a consistent embedding."""


class NoPerfectMatching(HamTetraError):
    pass


class NoConnectingFace(HamTetraError):
    pass


class SpliceFailure(HamTetraError):
    pass


class LocationFailure(HamTetraError):
    pass


class NotAFace(HamTetraError):
    pass


class NotCubic(HamTetraError, ValueError):
    pass


class InteriorPointsPresent(HamTetraError, ValueError):
    pass


class ParseError(HamTetraError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
