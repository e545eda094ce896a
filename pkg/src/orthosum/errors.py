"""Exception types shared across the package."""


class OrthosumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OrthosumError, ValueError):
    """Input lies outside the mathematical domain of the function."""


class GeometryError(OrthosumError, ValueError):
    """Requested configuration is geometrically impossible or degenerate."""


class AmbiguousGeometry(OrthosumError):
    """A horoball boundary grazes a geodesic within tolerance.

    The core-membership test cannot classify the class as interior or
    exterior; callers either flag the class and continue or re-raise.
    """


class BudgetExceeded(OrthosumError):
    """An iterative routine hit its evaluation or subdivision budget
    before reaching the requested tolerance."""


class Inconclusive:
    """Verdict object for checks that can decline to answer.

    Not an exception: returned, never raised.  Truth-testing is blocked
    so a verdict cannot silently pass for False in boolean context.
    """

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        self.reason = reason

    def __repr__(self):
        return f"Inconclusive({self.reason!r})"

    def __bool__(self):
        raise TypeError("Inconclusive verdict has no truth value; "
                        "compare with `is True` / `is False`")
