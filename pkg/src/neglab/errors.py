"""Exception hierarchy shared by all neglab modules."""


class NeglabError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(NeglabError, ValueError):
    pass


class LatticeError(NeglabError):
    """Two classes that live in different lattices were combined."""


class DegenerateInputError(NeglabError, ValueError):
    pass


class PreconditionError(NeglabError):
    pass


class ModelInconsistencyError(NeglabError):
    """The declared curve data cannot support a Zariski decomposition."""


class NotFoundError(NeglabError):
    pass


class LemmaViolation(NeglabError, AssertionError):
    """A statement that is a theorem was contradicted by a computation.

    This should never be raised; if it is, something upstream is broken.
    """


class CertificationError(NeglabError):
    """An interpolation certificate could not be produced."""

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension
