"""Exception types shared across the toolkit.

The command-line front end maps these onto exit codes: usage problems
(``ValueError``, including everything argparse rejects) exit 2, numerical
failures (:class:`NumericalError` and subclasses) exit 3, and I/O or file
format problems (``OSError``, :class:`SchemaError`) exit 4.
"""


class DagonionError(Exception):
    """Base class for toolkit-specific failures."""


class CyclicGraphError(DagonionError, ValueError):
    """An edge set that was supposed to be acyclic contains a directed cycle."""


class SchemaError(DagonionError):
    """A file parsed as JSON/CSV but its contents do not match the expected layout."""


class NumericalError(DagonionError):
    """Base class for numerical failures (degenerate draws, singular systems)."""


class CholeskyFailure(NumericalError):
    """A matrix required to be positive definite failed its Cholesky factorization."""


class SingularMatrixError(NumericalError):
    """A matrix that must be invertible is singular or numerically so."""


class SingularParentBlockError(SingularMatrixError):
    """A parent-block submatrix of a covariance matrix is numerically singular."""


class RankDeficientDataError(NumericalError):
    """A data matrix lacks the column rank the requested computation needs."""


class ZeroVarianceColumnError(NumericalError):
    """A data column is constant where positive sample variance is required."""


class NonPositiveVarianceError(NumericalError):
    """A diagonal entry that must be a positive variance is zero or negative."""
