"""Exception hierarchy shared by every module of the package."""


class SchubertError(Exception):
    """Base class; the CLI maps subclasses of PreconditionError to exit code 2."""


class PreconditionError(SchubertError):
    pass


class NotABijection(PreconditionError):
    pass


class OutOfRange(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class SizeLimitExceeded(PreconditionError):
    pass


class NotExpressible(PreconditionError):
    pass


class NotSkew(PreconditionError):
    pass


class EmptyDiagram(PreconditionError):
    pass


class InvalidForest(PreconditionError):
    pass


class PathLeavesDiagram(PreconditionError):
    pass


class NotIndependent(PreconditionError):
    pass


class CyclicGraph(PreconditionError):
    pass


class NotOneDominant(PreconditionError):
    pass


class DegenerateLift(SchubertError):
    """A lifted facet does not determine a unique affine functional.

    Never a precondition failure: it falsifies the regularity claim for the
    instance at hand, so it must surface as a check failure.
    """
