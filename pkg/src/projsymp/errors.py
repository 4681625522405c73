"""Exception hierarchy shared by all modules."""


class ProjSympError(Exception):
    """Base class for every error raised by the package."""


class NotASquare(ProjSympError):
    pass


class InsufficientPrecision(ProjSympError):
    pass


class WrongWeight(ProjSympError):
    pass


class NotSquarefree(ProjSympError):
    pass


class DegenerateMap(ProjSympError):
    pass


class BasePointMismatch(ProjSympError):
    pass


class GeometryMismatch(ProjSympError):
    pass


class NotGlobal(ProjSympError):
    pass


class UnstableTruncation(ProjSympError):
    """Cohomology dimension changed between truncation levels.

    ``suggested`` carries a truncation level worth retrying with.
    """

    def __init__(self, message, suggested=None):
        super().__init__(message)
        self.suggested = suggested


class TheoremViolation(ProjSympError):
    pass


class BadWord(ProjSympError):
    pass


class ResampleNeeded(ProjSympError):
    pass


class IllConditioned(ProjSympError):
    pass


class NotACocycle(ProjSympError):
    pass


class ConfigError(ProjSympError):
    pass
