"""Exception hierarchy."""


class MoprsError(Exception):
    """Base class for all library errors."""


class NonzeroRemainder(MoprsError, ArithmeticError):
    """A polynomial division that must be exact left a remainder."""


class SingularMatrix(MoprsError, ArithmeticError):
    """A linear system has no unique solution."""


class NegativeMultiplicity(MoprsError, ValueError):
    """A root quotient would leave a negative multiplicity."""


class MomentUnavailable(MoprsError, IndexError):
    """An explicit moment list is too short for the requested moment."""


class FreeMomentArity(MoprsError, ValueError):
    """The number of free moments does not match the inverted degree."""


class NotNormal(MoprsError):
    """The multi-index is not normal for the system."""


class ZeroIndex(MoprsError, ValueError):
    """The operation is undefined at the zero multi-index."""


class BadStepMultiset(MoprsError, ValueError):
    """A path step order does not connect the two endpoints."""


class NotAdmissible(MoprsError, ValueError):
    """An index sequence does not fit the determinantal formula."""


class ArityMismatch(MoprsError, ValueError):
    """Component counts disagree between system, spec and indices."""


class ConfigError(MoprsError, ValueError):
    """A CLI job description is malformed."""
