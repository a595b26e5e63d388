"""Exception types raised across the package."""


class DobrakovError(ValueError):
    """Base class; raised for malformed inputs and violated preconditions."""


class SetOutsideRing(DobrakovError, KeyError):
    def __init__(self, what: object) -> None:
        super().__init__(f"set outside ring: {what}")

    def __str__(self) -> str:
        return self.args[0]


class NotDirectedError(DobrakovError):
    """A family claimed to be directed has a pair without a common bound."""


class PGPFailure(DobrakovError):
    """The pseudometric generating property fails at some level."""


class HypothesisNotMet(DobrakovError):
    """A theorem's hypotheses do not hold for the given instance."""


class NullCompletionError(DobrakovError):
    """No squeezing pair exists for a member of the closure ring."""


class SpecError(DobrakovError):
    """Instance spec file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
