"""Exception types shared by the library and the command line."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class ResourceError(RuntimeError):
    """An enumeration or LP budget was exceeded."""


class InvariantViolation(RuntimeError):
    """A produced certificate failed re-verification. Always a bug."""
