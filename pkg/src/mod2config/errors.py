"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter problems exit 1, resource
guard trips exit 2, verification failures exit 3.
"""


class ParameterError(ValueError):
    """Input outside the documented range of an operation."""


class ContextError(ParameterError):
    """Polynomials from different ring contexts were combined."""


class NotAUnitError(ParameterError):
    """Inverse requested for a polynomial without constant term."""


class InvalidSubstitutionError(ParameterError):
    """Singular or malformed substitution matrix."""


class UnsupportedError(ParameterError):
    """Operation is well defined but not supported for this context."""


class ResourceError(RuntimeError):
    """A configured term-count or grid-size guard was exceeded."""


class VerificationError(AssertionError):
    """A golden comparison failed."""
