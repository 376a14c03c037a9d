"""Exception types shared across the package."""


class BflError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(BflError, ZeroDivisionError):
    """Inversion of zero in the ground field."""


class ShapeError(BflError):
    """Arity, rank or ring mismatch between tensor maps."""


class ConfigError(BflError):
    """Malformed algebra or suite configuration."""


class IntegralRankError(BflError):
    """The integral solution space does not have rank one."""

    def __init__(self, kind: str, rank: int):
        super().__init__(f"{kind} solution space has rank {rank}, expected 1")
        self.kind = kind
        self.rank = rank


class SwitchbackError(BflError):
    """The cup/cap composite is not a scalar multiple of the identity."""


class DegeneratePairingError(BflError):
    """The cup/cap normalization scalar is zero, so the pairing degenerates."""


class NotCommutativeError(BflError):
    """The algebra fails the (co)commutativity hypotheses of the construction."""


class VerificationError(BflError):
    """A builder postcondition (inverse law, factorization, ...) failed."""


class ParseError(BflError):
    """Diagram or equation source text does not conform to the grammar."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.col = col


class ArityError(BflError):
    """Diagram wires do not match up."""


class ContextError(BflError):
    """A diagram generator is not available in the evaluation context."""
