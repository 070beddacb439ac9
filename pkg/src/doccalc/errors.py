class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class LimitError(ValueError):
    """Raised when a brute-force enumeration would exceed its size cap."""


class SingularStep(ZeroDivisionError):
    """The recursion denominator vanished (within tolerance)."""

    def __init__(self, d0: float, d1: float):
        super().__init__(f"singular step: d1 - 2*d0 = {d1 - 2 * d0!r}")
        self.d0 = d0
        self.d1 = d1
