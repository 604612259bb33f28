"""Exception hierarchy shared by all vplab modules."""


class VplabError(Exception):
    """Base class for all vplab errors."""


class ScenarioError(VplabError):
    """Invalid or unreadable scenario configuration."""


class QuadratureError(VplabError):
    """Adaptive quadrature exceeded its refinement budget.

    Carries a ``diagnostics`` dict (panel count, worst error estimate,
    requested tolerance) to help diagnose the failing integrand.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class PenroseInstabilityError(VplabError):
    """|1 + L| fell below the resolvent safety threshold."""


class HorizonExceededError(VplabError):
    """Every retained density mode left the truncated frequency grid."""


class StaleModeError(VplabError):
    """A required evaluation point left the frequency grid hull."""


class DivergenceError(VplabError):
    """Time integration produced NaN/overflow; carries the last good time."""

    def __init__(self, message, last_good_time=None):
        super().__init__(message)
        self.last_good_time = last_good_time


class DomainTooSmallError(VplabError):
    """Distribution mass at the velocity boundary exceeds the safe threshold."""


class NoConvergenceError(VplabError):
    """Horizon-ladder gaps failed to decrease; carries the recorded gaps."""

    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data or {}
