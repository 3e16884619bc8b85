# calculus/exceptions.py


class CalculusError(Exception):
    """Base class for every error raised by the calculus app"""


class InvalidConfigError(CalculusError, ValueError):
    """A mode or Fock configuration violates its invariants"""


class DimensionMismatchError(CalculusError, ValueError):
    """Operands live over different mode counts or have the wrong shape"""

    def __init__(self, message, expected=None, got=None):
        super().__init__(message)
        self.expected = expected
        self.got = got


class ModeIndexError(CalculusError, IndexError):
    """A mode index outside 0..d-1"""


class UnsupportedSignatureError(CalculusError):
    """A monomial signature (l, m) outside the supported family"""

    def __init__(self, signature, pair=None):
        self.signature = tuple(signature)
        self.pair = pair
        message = f"unsupported signature {self.signature}"
        if pair is not None:
            message += f" arising from the product of {pair[0]} and {pair[1]}"
        super().__init__(message)


class SkewnessError(CalculusError, ValueError):
    """An operation that needs a skew-symmetric kernel received another one"""


class NonSymmetricTensorError(CalculusError, ValueError):
    """A Wiener-Ito coefficient tensor is not symmetric"""

    def __init__(self, order, deviation):
        super().__init__(f"coefficient f_{order} is not symmetric (deviation {deviation:.3e})")
        self.order = order
        self.deviation = deviation


class ClosureError(CalculusError):
    """Bracket closure did not reach a fixed point within the allowed rounds"""

    def __init__(self, rounds, dimension):
        super().__init__(f"no bracket closure after {rounds} rounds (span dimension {dimension})")
        self.rounds = rounds
        self.dimension = dimension


class SpanMembershipError(CalculusError, ValueError):
    """An operator lies outside the span it is expected to belong to"""


class PreconditionError(CalculusError, ValueError):
    """A named precondition of an operation does not hold"""

    def __init__(self, constraint, residual=None, **values):
        message = f"precondition '{constraint}' violated"
        if residual is not None:
            message += f" (residual {residual:.3e})"
        if values:
            message += " (" + ", ".join(f"{name}={value}" for name, value in values.items()) + ")"
        super().__init__(message)
        self.constraint = constraint
        self.residual = residual
        self.values = values
