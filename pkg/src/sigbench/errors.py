"""Exception hierarchy shared by every scheme."""


class SigbenchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(SigbenchError, ValueError):
    """Malformed input: bad lengths, framing, mismatched tags or dimensions."""


class ParameterError(SigbenchError, ValueError):
    """Scheme parameters outside their supported range."""


class KeyExhaustedError(SigbenchError):
    """A bounded-use key has no signatures left."""
