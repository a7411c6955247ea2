"""Exception hierarchy shared by the library and the CLI."""


class EulerToursError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(EulerToursError, ValueError):
    pass


class GraphFormatError(InvalidInput):
    """Malformed graph text."""


class NotEulerian(EulerToursError, ValueError):
    """The graph is unbalanced or disconnected."""


class TooLarge(EulerToursError, ValueError):
    """An exhaustive enumeration was asked for beyond its size guard."""


class AttemptsExhausted(EulerToursError, RuntimeError):
    """Rejection sampling hit its attempt budget."""

    def __init__(self, attempts: int):
        super().__init__(f"no acceptable sample after {attempts} attempts")
        self.attempts = attempts


class InvalidTour(EulerToursError, ValueError):
    pass


class NoArborescence(EulerToursError, ValueError):
    """The graph has no arborescence rooted at the requested vertex."""
