"""Exception hierarchy shared by all modules."""


class RationalFourierError(Exception):
    """Base class for every error raised by this package."""


class EmptySequence(RationalFourierError, ValueError):
    pass


class WrongHalfPlane(RationalFourierError, ValueError):
    def __init__(self, indices, half_plane):
        self.indices = list(indices)
        self.half_plane = half_plane
        super().__init__(
            f"poles at indices {self.indices} are not in the open {half_plane.value} half-plane"
        )


class PrefixTooShort(RationalFourierError, IndexError):
    def __init__(self, requested, available):
        self.requested = requested
        self.available = available
        super().__init__(f"prefix length {requested} requested, only {available} poles available")


class IndexOutOfRange(RationalFourierError, IndexError):
    pass


class PoleHit(RationalFourierError, ZeroDivisionError):
    def __init__(self, z, pole):
        self.z = z
        self.pole = pole
        super().__init__(f"evaluation point {z!r} coincides with pole {pole!r}")


class DegenerateArguments(RationalFourierError, ValueError):
    pass


class ZeroWidth(RationalFourierError, ValueError):
    pass


class InvalidExponent(RationalFourierError, ValueError):
    pass


class ToleranceNotMet(RationalFourierError, RuntimeError):
    """Adaptive quadrature ran out of its evaluation budget.

    The partial result is kept on ``result`` so callers can degrade
    gracefully instead of discarding the work.
    """

    def __init__(self, budget, achieved, result=None):
        self.budget = budget
        self.achieved = achieved
        self.result = result
        super().__init__(
            f"quadrature budget of {budget} evaluations exhausted; "
            f"error estimate {achieved:.3e} above tolerance"
        )


class ConfigParseError(RationalFourierError, ValueError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        where = f"line {line}" if line is not None else "config"
        super().__init__(f"{where}: {message}")


class SuiteFailure(RationalFourierError, RuntimeError):
    def __init__(self, suite, invariant, margin):
        self.suite = suite
        self.invariant = invariant
        self.margin = margin
        super().__init__(f"suite {suite!r} failed: {invariant} (margin {margin:.6g})")
