"""Exception hierarchy shared across the package.

``Exceeded`` outcomes of bounded searches are ordinary return values, not
exceptions; only genuine input errors and negative mathematical results
(e.g. a piecewise-linear image failing to be convex) raise.
"""


class LatticeError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(LatticeError):
    pass


class RankDeficient(LatticeError):
    pass


class Degenerate(LatticeError):
    """Input does not span the expected dimension."""


class OriginNotInterior(LatticeError):
    pass


class NonPrimitiveVertex(LatticeError):
    pass


class NotFano(LatticeError):
    pass


class NotDivisible(LatticeError):
    """Exact Laurent division left a nonzero remainder."""


class NotLaurent(LatticeError):
    """Algebraic mutation does not preserve regularity."""


class NotConvex(LatticeError):
    """Piecewise-linear image of a polytope is not convex."""


class FrozenVertex(LatticeError):
    pass


class SizeLimit(LatticeError):
    pass


class NotKronecker(LatticeError):
    pass


class NotFanoSupport(LatticeError):
    pass


class Incompatible(LatticeError):
    """A pair of mutation data violates the antisymmetry pairing."""


class NonPrimitive(LatticeError):
    pass


class NotAnnihilating(LatticeError):
    """A weight/factor pair does not pair to zero."""


class NotInKernel(LatticeError):
    pass


class InvariantViolation(LatticeError):
    """An internal consistency check failed; indicates a bug, not a finding."""


class InternalNonLaurent(InvariantViolation):
    """A cluster exchange division failed; should be impossible."""


class CompatibilityBroken(InvariantViolation):
    """Collection mutation produced an incompatible collection."""
