"""Exception vocabulary shared by all fredlab modules."""


class FredlabError(Exception):
    """Base class for all fredlab errors."""


class NonSquare(FredlabError):
    """A square matrix was required."""


class NotSymmetric(FredlabError):
    """Symmetry beyond the allowed relative slack was required."""


class NoConvergence(FredlabError):
    """An iterative eigensolver or factorization failed to converge."""


class EmptyMatrix(FredlabError):
    """A matrix with at least one entry was required."""


class FunctionUndefinedAtEigenvalue(FredlabError):
    """A scalar function returned a non-finite value at some eigenvalue."""


class AmbientMismatch(FredlabError):
    """Two subspaces live in different ambient dimensions."""


class DimensionMismatch(FredlabError):
    """Two operators act on spaces of different dimensions."""


class InvalidSpec(FredlabError):
    """An operator-family specification violates its constraints."""


class InvalidConfig(FredlabError):
    """A boundary-value-problem configuration violates its constraints."""


class MassNotPositiveDefinite(FredlabError):
    """The mass matrix of a discretization is not positive definite."""


class NoRootBracketed(FredlabError):
    """A root search was given an empty or malformed interval."""


class SamplingTooCoarse(FredlabError):
    """Parameter samples are too far apart to track eigenvalues safely."""


class GaugeSingular(FredlabError):
    """Two projectors are too far apart for the gauge operator to be invertible."""
