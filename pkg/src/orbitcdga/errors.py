"""Exception hierarchy shared by every module."""


class OrbitCdgaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OrbitCdgaError, ValueError):
    """Malformed or out-of-domain input (bad group spec, non-prime, m does not divide n)."""


class SizeLimitError(OrbitCdgaError):
    """A configured size bound was exceeded."""


class VerificationError(OrbitCdgaError):
    """An internal verification failed. This would contradict a proven statement."""


class NotApplicableError(OrbitCdgaError):
    """The operation's precondition on the input shape does not hold."""


class OracleUnavailableError(OrbitCdgaError):
    """No admissible weight function exists for the truncated homology oracle."""


class UndeterminedHomologyError(OrbitCdgaError):
    """Homology of a node could not be determined structurally."""
