"""Exception types shared across the package.

The CLI maps each class to an exit code (see ``presentbias.cli``).
"""


class DomainError(ValueError):
    """A parameter lies outside its admissible domain."""


class RegimeError(ValueError):
    """A regime-specific routine was called with the wrong side of the TAI threshold."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured work budget."""


class ConvergenceError(RuntimeError):
    pass
