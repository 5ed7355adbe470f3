"""Error types shared across the package."""


class ExhaustiveLimitError(ValueError):
    """Raised when an instance is too large for exhaustive enumeration."""


class PreconditionError(ValueError):
    """Raised when an operation's working hypothesis is not met.

    Distinct from a plain ValueError so callers can tell "you fed me garbage"
    apart from "the hypothesis this check relies on does not hold here".
    """
