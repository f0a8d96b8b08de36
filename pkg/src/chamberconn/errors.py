"""Exception hierarchy shared by all constructors and the CLI."""


class ChamberError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 5


class ResourceLimit(ChamberError):
    exit_code = 3


class InfiniteOrder(ChamberError):
    pass


class NotTwoFinite(ChamberError):
    pass


class NotDistanceTwo(ChamberError):
    pass


class NotPure(ChamberError):
    pass


class NotBalanced(ChamberError):
    pass


class NotPrime(ChamberError):
    pass


class NonUniform(ChamberError):
    pass


class InvalidAdjacency(ChamberError):
    pass


class RankTooSmall(ChamberError):
    pass


class InternalOverlap(ChamberError):
    """A constructed path family failed certification."""

    exit_code = 4


class SameVertex(ChamberError):
    pass


class IncompleteGraph(ChamberError):
    pass


class TooFewVertices(ChamberError):
    pass


class Disconnected(ChamberError):
    pass


class VerificationFailed(ChamberError):
    """A user-supplied path family was rejected."""

    exit_code = 4
