"""Exception hierarchy shared by the library and the CLI."""


class CtAlgError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(CtAlgError):
    """Malformed textual or JSON input (CLI exit code 2)."""


class NotHomogeneous(CtAlgError):
    pass


class ZeroInput(CtAlgError):
    pass


class CenterCollision(CtAlgError):
    pass


class ComplexConstant(CtAlgError):
    pass


class MalformedForest(CtAlgError):
    pass


class NoSuchEdge(CtAlgError):
    pass


class NotAForest(CtAlgError):
    """The word's digraph is not a forest, so the operator is zero."""


class MixedDegrees(CtAlgError):
    pass


class OutOfRange(CtAlgError):
    pass


class InsufficientPoints(CtAlgError):
    pass
