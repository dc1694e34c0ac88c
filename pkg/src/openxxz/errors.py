"""Exception types shared across the package."""


class OpenXXZError(Exception):
    """Base class for all package errors."""


class DegenerateQ(OpenXXZError):
    """q - 1/q is numerically zero, q-deformed quantities are undefined."""


class SeriesNotConverged(OpenXXZError):
    """A series/product evaluation left its convergence domain or hit the term cap."""


class PoleHit(OpenXXZError):
    """A product factor or Cartan function value is too close to a pole/zero."""


class ShapeMismatch(OpenXXZError):
    """Tensor slot structure of the operands is inconsistent."""


class NoSolution(OpenXXZError):
    """A recursive solve (transposition conjugator) is inconsistent."""


class UnknownIdentity(OpenXXZError):
    """Identity id not present in the registry."""


class UnknownObject(OpenXXZError):
    """Dump requested for an object the CLI does not know."""


class TruncationNotConverged(OpenXXZError):
    """Fock-cutoff growth exhausted without the output stabilizing."""


class TraceDiverging(OpenXXZError):
    """Fock-trace level weights grow instead of decaying."""


class DegenerateSpectrum(OpenXXZError):
    """Eigenvalues too close for a reliable simultaneous eigenbasis."""


class ConfigInvalid(OpenXXZError):
    """Run configuration failed validation."""
