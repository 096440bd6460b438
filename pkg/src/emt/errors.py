"""Exception hierarchy shared by the kernel, the solvers and the CLI."""


class EMTError(Exception):
    """Base class for every error raised by this package."""


class DuplicateName(EMTError):
    pass


class UnknownSort(EMTError):
    pass


class UnknownSymbol(EMTError):
    pass


class SortError(EMTError):
    pass


class ArityError(SortError):
    pass


class TheoryInconsistency(EMTError):
    """An asserted equation contradicts the theory (e.g. ``42 = 43``)."""


class InconsistentConstant(TheoryInconsistency):
    """A linear equation reduced to ``c = 0`` with ``c`` nonzero."""


class OccursViolation(TheoryInconsistency):
    """Unification would equate a generator with a constructor term containing it."""


class CompletionBudget(EMTError):
    """A completion procedure exceeded its configured step budget."""


class NoRepresentative(EMTError):
    """Extraction hit a theory generator with no defining e-node."""


class ParseError(EMTError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message
