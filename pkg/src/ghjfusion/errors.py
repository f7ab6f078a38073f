"""Exception types shared across the package.

Each error carries a CLI exit code so the front end can map failures
without string matching.
"""


class GHJError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class UnknownFamily(GHJError):
    exit_code = 2


class RankOutOfRange(GHJError):
    exit_code = 2


class UnknownVertex(GHJError):
    exit_code = 2


class LengthTooLarge(GHJError):
    exit_code = 2


class DecompositionFailed(GHJError):
    exit_code = 3


class AmbiguousDecomposition(GHJError):
    exit_code = 3

    def __init__(self, message, systems=()):
        super().__init__(message)
        self.systems = list(systems)


class DependentRepresentation(GHJError):
    exit_code = 1


class NonIntegerSolution(GHJError):
    exit_code = 1


class ClosureEscapesBasis(GHJError):
    exit_code = 1


class PremiseUnavailable(GHJError):
    exit_code = 3
