"""Exception hierarchy shared by every module of the engine."""


class DWTVError(Exception):
    """Base class for all engine errors."""


class InvalidParameter(DWTVError, ValueError):
    pass


class SizeLimitError(DWTVError, ValueError):
    pass


class RootOrderOverflow(DWTVError, ArithmeticError):
    """Merged root-of-unity order exceeds the configured cap."""


class CocycleError(DWTVError, ValueError):
    """A cochain failed the cocycle condition.

    ``witness`` holds the lexicographically smallest failing quadruple.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidBoundary(DWTVError, ValueError):
    pass


class InvalidInput(DWTVError, ValueError):
    pass


class MoveInapplicable(DWTVError, ValueError):
    pass


class MoveRejected(DWTVError, ValueError):
    pass


class Unsupported(DWTVError, ValueError):
    pass


class InvalidComposition(DWTVError, ValueError):
    pass
