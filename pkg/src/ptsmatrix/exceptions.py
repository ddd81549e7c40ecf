"""Exception hierarchy shared by all modules."""


class PTSMatrixError(Exception):
    """Base class for every error raised by :mod:`ptsmatrix`."""


class SingularMatrix(PTSMatrixError, ArithmeticError):
    """A 2x2 matrix is singular relative to its entry scale."""


class Overflow(PTSMatrixError, OverflowError):
    """Transfer-matrix entries left the representable range."""

    def __init__(self, k, magnitude):
        self.k = k
        self.magnitude = magnitude
        super().__init__(f"transfer matrix entries reached {magnitude:.3e} at k={k!r}")


class DomainError(PTSMatrixError, ValueError):
    """Wavenumber outside the region where the operation is defined."""


class SingularMatching(PTSMatrixError, ArithmeticError):
    """The traveling-wave matching system has no unique solution."""


class WholePlaneSpectrum(SingularMatching):
    """Point interaction with |gamma| = 2: the spectrum fills the plane."""


class SingularImageSet(PTSMatrixError, ArithmeticError):
    """Delta_k vanishes, so the image-set matrix is unbounded."""


class SMatrixNonexistent(PTSMatrixError, ArithmeticError):
    """The bracket I - 2(1+ik)T_k is not invertible."""


class NotPositiveDefinite(PTSMatrixError, ValueError):
    """A metric candidate is not Hermitian positive definite."""


class DegenerateFit(PTSMatrixError, ArithmeticError):
    """The metric-fit objective does not depend on chi."""


class ConfigError(PTSMatrixError, ValueError):
    """Invalid CLI configuration document."""
