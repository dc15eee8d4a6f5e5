"""Exception hierarchy.

Two error families matter to callers: usage errors (bad arguments,
malformed configuration) and mathematical validation failures (inputs
that parse fine but violate a structural invariant, e.g. a factor whose
singularity does not sit on the torus).  The CLI maps them to exit
codes 2 and 3 respectively.
"""


class RifRangeError(Exception):
    """Base class for all package errors."""


class UsageError(RifRangeError):
    """Malformed input or out-of-range parameters."""


class MathValidationError(RifRangeError):
    """Input violates a mathematical invariant."""


class InvalidDegree(UsageError):
    """Requested reflection degree is smaller than the polynomial degree."""


class RootfindFailure(MathValidationError):
    """Root iteration failed to converge; carries the best iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NotSingularOnTorus(MathValidationError):
    """Factor coefficients do not produce a singularity on the torus."""


class UnstableDenominator(MathValidationError):
    """Denominator polynomial vanishes inside the bidisk."""


class DenominatorZero(MathValidationError):
    """Evaluation at a point where a denominator vanishes."""


class ExceptionalSlice(MathValidationError):
    """Slice parameter too close to an exceptional point of the product."""


class ZeroOutsideDisk(MathValidationError):
    """A Blaschke zero lies outside the open unit disk."""


class NotHermitian(MathValidationError):
    """Matrix is not Hermitian within tolerance."""


class NonpositiveCoefficient(UsageError):
    """Normalized zero test requires strictly positive coefficients."""
