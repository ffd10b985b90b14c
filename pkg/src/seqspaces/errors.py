"""Exception types shared across the package.

ParseError covers malformed grammar strings and malformed JSON payloads.
DomainError covers structurally valid inputs that violate a precondition
(exponent out of range, index beyond an explicit weight, and so on).
The command line maps ParseError to exit code 2 and DomainError to 3.
"""


class ParseError(ValueError):
    """A spec string or JSON payload could not be parsed."""


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


class ScanCapExceeded(DomainError):
    """No admissible block size was found below the scan cap.

    Carries the level at which the search gave up so callers can report
    a structured failure rather than a bare message.
    """

    def __init__(self, level: int, cap: int, best_ratio: float):
        self.level = level
        self.cap = cap
        self.best_ratio = best_ratio
        super().__init__(
            f"no block size M <= {cap} satisfies the ratio condition at "
            f"level {level} (best ratio found: {best_ratio!r})"
        )
