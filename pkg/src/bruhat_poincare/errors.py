"""Exception types shared across the package."""


class SizeGuardError(ValueError):
    """Input exceeds a configured size guard (n, point count, search states)."""


class HypothesisViolated(Exception):
    """A mathematical hypothesis does not hold on this input.

    Distinct from bad usage: the CLI maps it to exit status 2.
    """


class NonGenericHeight(ValueError):
    """The height vector takes equal values on the endpoints of some edge."""


class InternalConsistencyError(RuntimeError):
    """A proven invariant failed; indicates a bug, not bad input."""
