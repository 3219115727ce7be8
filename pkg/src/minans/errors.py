"""Exception hierarchy shared by all modules."""


class MinansError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 3


class ParseError(MinansError):
    exit_code = 2

    def __init__(self, line, col, message):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class SemanticError(MinansError):
    def __init__(self, message, line=None, col=None):
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col
        self.message = message


class TooLarge(MinansError):
    exit_code = 4


class Inconsistent(MinansError):
    """The database has no stable model."""


class NotStratified(MinansError):
    pass


class PartitionRequired(MinansError):
    pass


class NotStrongCover(MinansError):
    pass


class NotCyclic(MinansError):
    pass


class NotCyclicSeed(MinansError):
    pass


class StaleCompilation(MinansError):
    pass


class FormatError(MinansError):
    pass


class StateVerified(MinansError):
    pass


class StateComplete(MinansError):
    pass


class EmptyState(MinansError):
    pass


class TrivialDatabase(MinansError):
    pass


class IoError(MinansError):
    exit_code = 1


class StaleCompilationWarning(UserWarning):
    pass


class NoCompletion(MinansError):
    pass
