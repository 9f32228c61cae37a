"""Exception types shared across the package."""


class ExchangeableError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ValidationError(ExchangeableError, ValueError):
    """An input structure violates its invariants (e.g. graphon entry out of range)."""

    code = "validation"


class ParameterError(ExchangeableError, ValueError):
    code = "parameter"


class DomainError(ExchangeableError, ValueError):
    code = "domain"


class ContractError(ExchangeableError, ValueError):
    """A caller broke an interface contract, such as passing a non-canonical key."""

    code = "contract"


class SizeError(ExchangeableError):
    """A computation exceeds the size guard of an exact algorithm."""

    code = "size"


class FormatError(ValidationError):
    """A text file does not follow its format; the message carries source, line and column."""

    def __init__(self, source: str, line: int, column: int, detail: str):
        super().__init__(f"{source}:{line}:{column}: {detail}")
        self.source, self.line, self.column = source, line, column
