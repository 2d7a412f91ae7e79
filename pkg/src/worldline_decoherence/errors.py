"""Exception types.

Two families: :class:`ValidationError` for bad input (the CLI maps these to
exit code 2) and :class:`ConvergenceError` for numerical failures (exit
code 3).
"""


class ValidationError(ValueError):
    """Input rejected before any numerics run."""


class ConvergenceError(ArithmeticError):
    """A numerical routine could not deliver a trustworthy result."""


class NonPositiveParameter(ValidationError):
    pass


class DampingTooLarge(ValidationError):
    pass


class UnknownDimensionTag(ValidationError):
    pass


class UnknownConfigKey(ValidationError):
    pass


class PoleOnRealAxis(ValidationError):
    pass


class SuperpositionTooLarge(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class DegenerateDenominator(ValidationError):
    pass


class ZeroFrequency(ValidationError):
    pass


class NegativeAcceleration(ValidationError):
    pass


class DetailedBalanceViolation(ValidationError):
    pass


class PoleOutsideInterval(ValidationError):
    pass


class ZeroTemperature(ValidationError):
    pass


class WrongKind(ValidationError):
    pass


class GridTooSmall(ValidationError):
    pass


class StabilityViolation(ValidationError):
    pass


class NotFinite(ConvergenceError):
    pass


class MaxSubdivisionsExceeded(ConvergenceError):
    pass


class NonFiniteIntegrand(ConvergenceError):
    def __init__(self, x):
        super().__init__(f"integrand is not finite at x={x!r}")
        self.x = x


class NonFiniteState(ConvergenceError):
    pass
