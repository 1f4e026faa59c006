"""Exception classes shared by every module."""


class Sum3Error(Exception):
    """Base class for all library errors."""


class PreconditionViolation(Sum3Error, ValueError):
    """An input violates a documented precondition."""


class NotCoprime(PreconditionViolation):
    pass


class ModuliNotCoprime(PreconditionViolation):
    pass


class NotADiscriminant(PreconditionViolation):
    pass


class NotRepresentable(PreconditionViolation):
    """The residue class contains no sums of three squares."""


class ModulusMismatch(PreconditionViolation):
    pass


class EmptyBuckets(PreconditionViolation):
    pass


class TooLarge(Sum3Error):
    """An input exceeds a configured cap."""


class InternalContradiction(Sum3Error):
    """A construction that is proven to succeed did not.

    Raised instead of retrying; seeing this means a bug, not bad input.
    """


class ModulusTooLargeForPipeline(UserWarning):
    """Advisory: the enlarged modulus is beyond what the witness pipeline handles."""
