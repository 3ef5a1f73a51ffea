"""Exception hierarchy shared by every stage of the pipeline."""


class QuasiColourError(Exception):
    """Base class; ``stage`` names the pipeline stage that failed."""

    exit_code = 2

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self):
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class ArgumentError(QuasiColourError, ValueError):
    """Bad input: violated precondition or malformed data."""


class SchemaError(ArgumentError):
    """A JSON document does not match the expected schema."""


class ResourceError(QuasiColourError, RuntimeError):
    """A configured budget (cosets, patch size, search nodes) ran out."""

    exit_code = 3

    def __init__(self, message, stage=None, best=None):
        super().__init__(message, stage)
        self.best = best


class InadmissibleIndexError(ArgumentError):
    """Riemann-Hurwitz gives a non-integral genus for this index."""


class SubgroupTooSmallError(QuasiColourError):
    """The quotient has a loop: some edge joins two vertices of one orbit."""

    exit_code = 3


class UnsupportedInputError(ArgumentError):
    """The input is valid but outside what the construction handles."""


class VerificationError(QuasiColourError):
    exit_code = 1
