"""Exception hierarchy for the Salem Entropy Toolkit."""


class SalemToolkitError(Exception):
    """Base class for every failure raised by the toolkit."""


class InputError(SalemToolkitError, ValueError):
    """Malformed polynomial text, unreadable document, or wrong shape."""


class NotReciprocalError(InputError):
    """A reciprocal (palindromic) polynomial was required."""


class NotSalemError(SalemToolkitError):
    """An operation that needs a Salem polynomial received something else."""


class RootIsolationError(SalemToolkitError):
    """A bracket has no sign change, or roots are too close to separate."""


class ParityError(SalemToolkitError):
    """Square roots m, n of -Q(1), Q(-1) have different parity."""


class PairingError(SalemToolkitError):
    """Roots of an H^1 polynomial cannot be split into conjugate pairs."""


class NotAnIsometryError(SalemToolkitError):
    """A matrix does not preserve the given Gram form."""


class IndeterminateSignatureError(SalemToolkitError):
    """A numeric eigenvalue fell within the margin around zero."""
