"""Exception hierarchy shared across the package."""


class ChaosCrackError(Exception):
    """Base class for all errors raised by this package."""


class InvalidKeyError(ChaosCrackError, ValueError):
    pass


class KeyFileError(ChaosCrackError, ValueError):
    pass


class IntegrationDivergedError(ChaosCrackError, ArithmeticError):
    """The Chen integrator produced a non-finite state."""

    def __init__(self, step: int):
        super().__init__(f"Chen integration diverged at step {step}")
        self.step = step


class InvalidMatrixError(ChaosCrackError, ValueError):
    """A cat matrix does not induce a bijection on the N x N grid."""


class SizeMismatchError(ChaosCrackError, ValueError):
    pass


class OracleError(ChaosCrackError):
    pass


class OracleConnectionError(OracleError, ConnectionError):
    pass


class OracleProtocolError(OracleError):
    """Malformed frame, or an error frame returned by the server."""

    def __init__(self, message: str, code: int | None = None):
        super().__init__(message)
        self.code = code


class OracleInconsistencyError(OracleError):
    """Probe responses do not decode to a permutation."""
