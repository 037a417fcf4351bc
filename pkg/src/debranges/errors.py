"""Exception types shared across the package.

Input-shape problems subclass ValueError; numerical failures (a solver or a
conditioning guard giving up) subclass RuntimeError.  The CLI maps the former
to exit code 1 and the latter to exit code 2.
"""

__all__ = [
    "HBConstructionError",
    "DuplicatePointError",
    "PhaseRangeError",
    "SolverConvergenceError",
    "IllConditionedError",
]


class HBConstructionError(ValueError):
    """Raised when data does not describe a valid Hermite-Biehler function.

    ``root_index`` names the offending root when the problem is a root in the
    closed upper half-plane, else it is None.
    """

    def __init__(self, message, root_index=None):
        super().__init__(message)
        self.root_index = root_index


class DuplicatePointError(ValueError):
    """Raised by Gram assembly when two kernel centers coincide."""

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class PhaseRangeError(RuntimeError):
    """Raised when a phase target is outside the attainable range.

    For a generator with exp_coefficient 0 the phase is bounded; ``attainable``
    carries the open interval (inf, sup) of reachable phase values.
    """

    def __init__(self, message, attainable):
        super().__init__(message)
        self.attainable = attainable


class SolverConvergenceError(RuntimeError):
    """Raised when the node solver cannot meet the residual tolerance.

    ``bracket`` holds the last bracketing interval of the worst target.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class IllConditionedError(RuntimeError):
    """Raised when a linear system is too ill-conditioned to trust.

    ``cond`` carries the measured condition number.
    """

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond
