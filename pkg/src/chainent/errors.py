"""Exception hierarchy.

Input problems derive from :class:`ValueError` so they read naturally at call
sites; numerical failures derive from :class:`NumericalError`.  Every class
carries a ``kind`` string that the command-line front end prints as
``error_kind=<kind>``.
"""


class ChainEntError(Exception):
    kind = "error"


class DimensionError(ChainEntError, ValueError):
    kind = "dimension"


class NumericalError(ChainEntError, ArithmeticError):
    kind = "numerical"


class NumericalSingularityError(NumericalError):
    kind = "numerical_singularity"


class ToleranceNotMetError(NumericalError):
    kind = "tolerance_not_met"


class CorrelationMatrixInvalidError(NumericalError):
    kind = "correlation_matrix_invalid"


class ConvergenceError(NumericalError):
    kind = "non_convergence"


class DegenerateGroundStateError(NumericalError):
    kind = "degenerate_ground_state"
