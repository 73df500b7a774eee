class CovsysError(ValueError):
    """Base class for every error raised by this package."""


class InvalidModulusError(CovsysError):
    pass


class PeriodTooLargeError(CovsysError):
    """The lcm of the moduli exceeds the enumeration cap."""

    def __init__(self, period, cap):
        self.period = period
        self.cap = cap
        super().__init__(
            f"period N={period} exceeds enumeration cap {cap}; "
            "raise the cap or use pointwise multiplicity() instead"
        )


class InvalidFrequencyError(CovsysError):
    pass


class OrderMismatchError(CovsysError):
    pass


class ConstructionError(CovsysError):
    """A generated system failed its own postcondition."""


class DocumentError(CovsysError):
    pass
