"""Exception types shared across the package."""


class QScatterError(Exception):
    """Base class for all package errors."""


class NonEvaluableProfileError(QScatterError):
    """Raised when a pointwise value is requested from a singular profile."""


class WindowCapError(QScatterError):
    """Raised when the potential tail does not fall below the cutoff within max_window."""


class NonFiniteStateError(QScatterError):
    """Raised when the integrated wavefunction overflows or turns NaN."""


class DegenerateWindowError(QScatterError):
    """Raised when a zero-length integration window is used with a nontrivial profile."""


class SingularMatchingError(QScatterError):
    """Raised when the plane-wave matching system is numerically singular."""


class UnitarityViolationError(QScatterError):
    """Raised when T + R drifts from 1 beyond tolerance (bad window or step size)."""


class MatchingCrossCheckError(QScatterError):
    """Raised when the linear-system amplitudes disagree with the closed-form magnitude."""


class NonFiniteMatrixError(QScatterError):
    """Raised when a transfer-matrix product overflows."""


class SweepError(QScatterError):
    """Raised when one or more energies of a sweep fail; message lists them."""


class GridTooCoarseError(QScatterError):
    """Raised when curve statistics are not stable under grid refinement."""


class SpecParseError(QScatterError):
    """Raised on malformed run-spec files; message carries the line number."""
