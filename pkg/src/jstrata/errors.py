"""Exception hierarchy shared by all modules."""


class StrataError(Exception):
    """Base class for every error raised by jstrata."""


class ZeroInput(StrataError):
    pass


class PrecisionExceeded(StrataError):
    """A coefficient needed for a certified answer lies beyond the tracked precision."""


class SingularMatrix(StrataError):
    pass


class BadSlope(StrataError):
    pass


class BadSpec(StrataError):
    pass


class NotDieudonne(StrataError):
    pass


class DepthExhausted(StrataError):
    pass


class WindowTooLarge(StrataError):
    pass


class NotFound(StrataError):
    pass


class FieldTooSmall(StrataError):
    pass


class NotAChart(StrataError):
    pass


class NotMinuscule(StrataError):
    pass


class NotBT1(StrataError):
    pass


class NoMatch(StrataError):
    pass


class AmbiguousMatch(StrataError):
    pass


class BudgetExceeded(StrataError):
    pass


class NotVertexChain(StrataError):
    pass


class NonTerminating(StrataError):
    pass


class NotInADLV(StrataError):
    pass


class AnchorNotFound(StrataError):
    pass
