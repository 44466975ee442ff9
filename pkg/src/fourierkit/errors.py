"""Exception types shared across the toolkit."""


class FourierKitError(Exception):
    """Base class for all toolkit errors."""


class ConstraintViolation(FourierKitError):
    """A signal or system parameter violates its admissibility constraint.

    When raised by the DSL parser, ``span`` holds the (start, end) character
    offsets of the offending fragment.
    """

    def __init__(self, message, span=None):
        super().__init__(message)
        self.span = span


class ExistenceViolation(FourierKitError):
    """Operation requires an absolutely integrable signal and got none."""


class NoConvergence(FourierKitError):
    """Quadrature could not meet its tolerance within the configured limits."""


class ExcludedPoint(FourierKitError):
    """Evaluation was requested at a frequency excluded by a side condition."""

    def __init__(self, omega, condition):
        super().__init__(f"omega = {omega} violates side condition: {condition}")
        self.omega = omega
        self.condition = condition


class UnsupportedNode(FourierKitError):
    """The expression contains a node this operation does not handle."""


class InvalidSystem(FourierKitError):
    """Differential-system coefficient lists violate the order constraints."""


class RootFindingFailure(FourierKitError):
    """Polynomial root iteration did not reach the residual tolerance."""


class UnstableSystem(FourierKitError):
    """Time-domain simulation requires all poles in the open left half-plane."""


class StepTooLarge(FourierKitError):
    """Integration step too coarse for the system's fastest pole."""


class NotSettled(FourierKitError):
    """Steady-state window still contains significant non-periodic content."""


class ParityViolation(FourierKitError):
    """Signal does not have the parity the relation check requires."""


class CausalityViolation(FourierKitError):
    """Signal is not causal, so the Laplace boundary relation does not apply."""


class DslSyntaxError(FourierKitError):
    """Signal/system text failed to parse.

    Carries the character ``position`` (0-based), ``line``/``column``
    (1-based) and the list of ``expected`` token descriptions.
    """

    def __init__(self, message, position, line, column, expected=()):
        super().__init__(f"{message} at line {line}, column {column}")
        self.position = position
        self.line = line
        self.column = column
        self.expected = tuple(expected)
