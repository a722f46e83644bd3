EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_GUARD = 3


class DegenerationError(ValueError):
    exit_code = EXIT_VALIDATION

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(DegenerationError):
    """Input violates a shape, field or dimension-vector constraint."""


class NotRealizable(DegenerationError):
    """A rank table with a negative interval multiplicity."""


class NotFlat(DegenerationError):
    pass


class NotIrreducible(DegenerationError):
    pass


class PreconditionError(DegenerationError):
    pass


class GuardExceeded(DegenerationError, RuntimeError):
    """An enumeration would exceed its size guard. Never truncated."""
    exit_code = EXIT_GUARD
