"""Exception types shared across the laboratory."""


class MeanLabError(Exception):
    """Base class for all meanlab errors."""


class DomainError(MeanLabError, ValueError):
    """Argument outside the mathematical domain of a function."""


class DimensionMismatch(MeanLabError, ValueError):
    """Field, radius, grid, or point dimensions are incompatible."""


class NoSignChange(MeanLabError, ValueError):
    """A bisection bracket does not straddle a root."""


class ScanExhausted(MeanLabError, RuntimeError):
    """A sign scan hit its ceiling without finding the required region."""


class InfiniteValue(MeanLabError, ValueError):
    """A field evaluated to an infinity the active policy does not absorb."""


class PositivityError(MeanLabError, ValueError):
    """A radius function evaluated to a non-positive value."""


class NonConvergenceError(MeanLabError, RuntimeError):
    """A quadrature that must converge exhausted its refinement budget."""


class UnknownScenario(MeanLabError, KeyError):
    """Requested scenario name is not registered."""


class InvalidOverride(MeanLabError, ValueError):
    """A scenario parameter override has an unknown key or a bad value."""


class ParseError(MeanLabError, ValueError):
    """Mini-language parse failure, annotated with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
