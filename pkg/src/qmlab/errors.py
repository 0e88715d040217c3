"""Exception types shared across the workbench."""


class QmlabError(Exception):
    """Base class for all workbench errors."""


class DimMismatch(QmlabError):
    """Operands live in spaces of different dimension."""


class ZeroVector(QmlabError):
    """A state cannot be built from a (near-)zero amplitude vector."""


class NotHermitian(QmlabError):
    """An operator expected to be Hermitian is not, within tolerance."""


class EigensolveFailure(QmlabError):
    """The dense eigensolver did not converge."""


class DoNotCommute(QmlabError):
    """Simultaneous diagonalization requested for non-commuting operators."""


class NotNormalized(QmlabError):
    """A unit-norm state was required."""


class PacketTooNarrow(QmlabError):
    """Wave packet width is below the grid resolution requirement."""


class PacketNearBoundary(QmlabError):
    """Wave packet support reaches the edge of the periodic grid."""


class GridTooNarrow(QmlabError):
    """Grid does not contain the requested function's support."""


class StabilityViolation(QmlabError):
    """Time step violates the propagation stability guard."""


class NoTransmission(QmlabError):
    """No probability reached the detection screen."""


class TooFewSamples(QmlabError):
    """Not enough trajectory samples for a finite-difference diagnostic."""


class InvalidJ(QmlabError):
    """Angular momentum quantum number out of the supported range."""


class ConfigError(QmlabError):
    """Experiment configuration is invalid; the message names the key."""


class ExperimentFailed(QmlabError):
    """An experiment assertion failed; the message names the assertion."""
