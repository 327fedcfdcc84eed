"""Exception types raised across the package."""


class GaloisMaxError(Exception):
    pass


class NotOddPrime(GaloisMaxError, ValueError):
    pass


class NotCoprime(GaloisMaxError, ValueError):
    pass


class OutOfRange(GaloisMaxError, ValueError):
    pass


class UndefinedAt(GaloisMaxError, ValueError):
    pass


class NormalizationFailure(GaloisMaxError, ArithmeticError):
    """Outcome probabilities do not sum to one; the conjugate table is wrong."""


class TooLarge(GaloisMaxError, ValueError):
    pass


class LeakedMass(GaloisMaxError, ArithmeticError):
    pass


class CheckpointCorrupt(GaloisMaxError):
    """Checkpoint is unreadable or belongs to a different scan."""


class EmptyInput(GaloisMaxError, ValueError):
    pass


class DegenerateThreshold(UserWarning):
    """MAXGAMMA threshold is non-positive, so every conjugate qualifies."""
