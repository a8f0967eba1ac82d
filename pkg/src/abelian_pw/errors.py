"""Exception types shared across the package."""


class UsageError(ValueError):
    """Arguments are inconsistent (mismatched ambient dimension, bad shapes, ...)."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured word-width bound on 2*g*r."""


class DomainError(ValueError):
    """Input lies outside the domain of a map (zero character, origin, ...)."""


class LatticeError(ValueError):
    """The lattice basis does not span real 2g-space."""
