"""Exception types raised across the package.

Each carries a short, stable ``code`` used by the CLI when reporting on stderr.
"""


class PangularError(ValueError):
    code = "E_PANGULAR"


class ZeroVector(PangularError):
    code = "E_ZERO_VECTOR"


class DimensionMismatch(PangularError):
    code = "E_DIM_MISMATCH"


class NonFiniteCoordinate(PangularError):
    code = "E_NON_FINITE"


class InvalidSpace(PangularError):
    code = "E_INVALID_SPACE"


class TripleInfeasible(PangularError):
    code = "E_TRIPLE_INFEASIBLE"


class DegenerateTriple(PangularError):
    code = "E_DEGENERATE_TRIPLE"


class ParamOutOfDomain(PangularError):
    code = "E_PARAM_DOMAIN"


class DimensionTooSmall(PangularError):
    code = "E_DIM_TOO_SMALL"


class NoConvergence(PangularError):
    code = "E_NO_CONVERGENCE"


class UnknownProperty(PangularError):
    code = "E_UNKNOWN_PROPERTY"


class UnknownBound(PangularError):
    code = "E_UNKNOWN_BOUND"
