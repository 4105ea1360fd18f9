"""Exception hierarchy.

The three families map onto the CLI exit codes: parameter errors exit 2,
resource bounds exit 3, and internal consistency failures exit 1.
"""


class LittleGroupsError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(LittleGroupsError, ValueError):
    """Inputs violate a mathematical precondition."""


class ResourceError(LittleGroupsError):
    """A desk-scale bound would be exceeded."""


class ConsistencyError(LittleGroupsError, AssertionError):
    """An internal invariant failed; always a bug or a falsified claim."""


# ffield
class NonPrime(ParameterError):
    pass


class DegreeTooLarge(ResourceError):
    pass


class NoIrreducibleFound(ConsistencyError):
    pass


class FieldMismatch(ParameterError):
    pass


class DivisionByZero(ParameterError, ZeroDivisionError):
    pass


class ZeroElement(ParameterError):
    pass


class OrderNotAvailable(ParameterError):
    pass


class NotASubfield(ParameterError):
    pass


# groups
class IncompatibleParameters(ParameterError):
    pass


class GroupTooLarge(ResourceError):
    pass


class TooLarge(ResourceError):
    pass


class FieldTooLarge(ResourceError):
    pass


class NotAHomomorphism(ParameterError):
    pass


# representations
class NotMonomialForm(ParameterError):
    pass


class NotAScalar(ParameterError):
    pass


class NotIrreducible(ParameterError):
    pass


class IsotypicityViolation(ConsistencyError):
    pass


class LevelsIncompatible(ParameterError):
    pass
