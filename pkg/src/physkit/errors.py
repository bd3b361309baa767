"""Exception hierarchy shared by all physkit modules."""


class PhyskitError(Exception):
    """Base class for every error raised by the library."""


class DomainError(PhyskitError, ValueError):
    """Argument outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole, e.g. Gamma at a nonpositive integer."""


class IndexRangeError(PhyskitError, ValueError):
    """Invalid integer index combination (such as |m| > l)."""


class ConvergenceError(PhyskitError, RuntimeError):
    """A series or iteration failed to meet its stopping rule."""


class DegeneracyError(PhyskitError, ValueError):
    """Linear dependence, vanishing norm, or repeated eigenvalue."""


class ResonanceError(PhyskitError, ValueError):
    """Frobenius recursion hit f0(sigma + n) = 0."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"resonance at n = {n}: f0(sigma + n) vanishes")


class BracketError(PhyskitError, ValueError):
    """Root or eigenvalue bracket does not straddle a sign change."""


class StiffnessError(PhyskitError, RuntimeError):
    """The fixed-step integrator could not meet its accuracy target."""


class ZeroCrossingError(PhyskitError, ValueError):
    """A function that must be nonzero vanishes on the grid."""


class NonHermitianError(PhyskitError, ValueError):
    """Matrix is not self-adjoint within tolerance."""


class NonGroupTableError(PhyskitError, ValueError):
    """Cayley table violates a group axiom."""

    def __init__(self, axiom, detail=""):
        self.axiom = axiom
        super().__init__(f"{axiom} violated" + (f": {detail}" if detail else ""))


class MalformedInstanceError(PhyskitError, ValueError):
    """Kochen-Specker instance fails a structural check."""


class UnsupportedError(PhyskitError, NotImplementedError):
    """Operation is not defined for the given catalog entry."""


class SeriesOverflowError(PhyskitError, ArithmeticError):
    """Intermediate value exceeds the floating-point range."""


class QuadratureError(ConvergenceError):
    """Quadrature refinement did not converge."""


class EvaluationError(PhyskitError, ArithmeticError):
    """A user-supplied callable failed or returned a non-finite value."""


class DecayError(DomainError):
    """Test function has no declared support or decay where one is needed."""


class DerivativeOrderError(PhyskitError, ValueError):
    """A test function cannot supply the requested derivative order."""


class EdgeSupportError(DomainError):
    """Point evaluation requested exactly at the boundary of a declared support."""
